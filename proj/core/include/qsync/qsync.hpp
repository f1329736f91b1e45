// qsync.hpp: umbrella header

#pragma once

#include "qsync/analysis.hpp"
#include "qsync/error.hpp"
#include "qsync/liouvillian.hpp"
#include "qsync/measures.hpp"
#include "qsync/metrology.hpp"
#include "qsync/models.hpp"
#include "qsync/operator.hpp"
#include "qsync/spectral.hpp"
#include "qsync/stationary.hpp"
#include "qsync/symmetry.hpp"
#include "qsync/version.hpp"
