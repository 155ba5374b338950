#include "dtlab/impl/analysis.ipp"

namespace dtlab {

DTLAB_ANALYSIS_INSTANTIATE(, double)

}  // namespace dtlab
