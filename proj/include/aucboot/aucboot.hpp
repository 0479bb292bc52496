#pragma once

// Umbrella header for the aucboot library: nonparametric bootstrap
// estimators of classifier error rate and AUC, their uncertainty
// estimators, and the Monte-Carlo harness that compares them.

#include "aucboot/auc_estimators.hpp"
#include "aucboot/classifiers.hpp"
#include "aucboot/config.hpp"
#include "aucboot/csv.hpp"
#include "aucboot/dataset.hpp"
#include "aucboot/error_estimators.hpp"
#include "aucboot/linalg.hpp"
#include "aucboot/metrics.hpp"
#include "aucboot/replicate_scores.hpp"
#include "aucboot/resampling.hpp"
#include "aucboot/rng.hpp"
#include "aucboot/simulate.hpp"
#include "aucboot/smoothness.hpp"
#include "aucboot/uncertainty.hpp"
#include "aucboot/version.hpp"
