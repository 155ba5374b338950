#pragma once

// Full template definitions, for instantiating the library on scalar types other than double.
#include "dtlab/impl/analysis.ipp"
