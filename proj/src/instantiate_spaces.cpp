#include "dtlab/impl/spaces.ipp"

namespace dtlab {

DTLAB_SPACES_INSTANTIATE(, double)

}  // namespace dtlab
