#include "dtlab/impl/inner_rational.ipp"

namespace dtlab {

DTLAB_INNER_RATIONAL_INSTANTIATE(, double)

}  // namespace dtlab
