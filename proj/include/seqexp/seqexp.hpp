#pragma once

// Umbrella header for the whole library.

#include "seqexp/acoustics.hpp"
#include "seqexp/cases.hpp"
#include "seqexp/compression.hpp"
#include "seqexp/core.hpp"
#include "seqexp/diagnostics.hpp"
#include "seqexp/error.hpp"
#include "seqexp/euler.hpp"
#include "seqexp/field.hpp"
#include "seqexp/grid.hpp"
#include "seqexp/maxwell.hpp"
#include "seqexp/parallel.hpp"
#include "seqexp/polynomial.hpp"
#include "seqexp/riemann.hpp"
#include "seqexp/spectral.hpp"
#include "seqexp/stencil.hpp"
