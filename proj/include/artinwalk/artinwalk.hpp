#pragma once

// Umbrella header.

#include "artinwalk/cli/measure_spec.hpp"

#include "artinwalk/core/artin.hpp"
#include "artinwalk/core/geodesic.hpp"
#include "artinwalk/core/length.hpp"
#include "artinwalk/core/normal_form.hpp"
#include "artinwalk/core/text.hpp"
#include "artinwalk/drift/closed_forms.hpp"
#include "artinwalk/drift/drift.hpp"
#include "artinwalk/harmonic/cylinders.hpp"
#include "artinwalk/harmonic/measure.hpp"
#include "artinwalk/harmonic/traffic.hpp"
#include "artinwalk/montecarlo/estimate.hpp"
#include "artinwalk/montecarlo/oracle.hpp"
#include "artinwalk/montecarlo/rng.hpp"
#include "artinwalk/montecarlo/walk.hpp"
#include "artinwalk/validation/acceptance.hpp"
#include "artinwalk/validation/random_measures.hpp"
