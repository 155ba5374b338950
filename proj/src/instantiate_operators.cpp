#include "dtlab/impl/operators.ipp"

namespace dtlab {

DTLAB_OPERATORS_INSTANTIATE(, double)

}  // namespace dtlab
