#pragma once

#include "ptsym/version.hpp"

#include "ptsym/numerics/dopri5.hpp"
#include "ptsym/numerics/gamma.hpp"
#include "ptsym/numerics/real_scalar.hpp"
#include "ptsym/numerics/roots.hpp"
#include "ptsym/numerics/step_control.hpp"

#include "ptsym/geometry/wedges.hpp"

#include "ptsym/classical/hamiltonian.hpp"
#include "ptsym/classical/orbit.hpp"
#include "ptsym/classical/period.hpp"

#include "ptsym/quantum/shooting.hpp"
#include "ptsym/quantum/spectrum.hpp"
