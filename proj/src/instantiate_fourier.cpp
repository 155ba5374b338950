#include "dtlab/impl/fourier.ipp"

namespace dtlab {

DTLAB_FOURIER_INSTANTIATE(, double)

}  // namespace dtlab
