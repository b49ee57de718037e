#ifndef QKR_QKR_HPP
#define QKR_QKR_HPP

#include "qkr/bessel.hpp"
#include "qkr/experiment.hpp"
#include "qkr/kernel.hpp"
#include "qkr/observables.hpp"
#include "qkr/phases.hpp"
#include "qkr/propagators.hpp"
#include "qkr/spinor.hpp"
#include "qkr/state.hpp"
#include "qkr/types.hpp"

#endif  // QKR_QKR_HPP
