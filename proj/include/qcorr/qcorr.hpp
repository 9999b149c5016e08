#pragma once

// Umbrella header for the two-qubit correlation dynamics library.

#include "qcorr/tolerances.hpp"
#include "qcorr/matrix.hpp"
#include "qcorr/eigensolvers.hpp"
#include "qcorr/state.hpp"
#include "qcorr/random.hpp"
#include "qcorr/correlations.hpp"
#include "qcorr/channel.hpp"
#include "qcorr/trajectory.hpp"
#include "qcorr/markov.hpp"
#include "qcorr/nonmarkov.hpp"
#include "qcorr/csv.hpp"
#include "qcorr/validate.hpp"
