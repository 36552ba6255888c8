#pragma once

#include "hcipnc/constants.hpp"
#include "hcipnc/dirac.hpp"
#include "hcipnc/electroweak.hpp"
#include "hcipnc/error.hpp"
#include "hcipnc/io.hpp"
#include "hcipnc/nuclear.hpp"
#include "hcipnc/numerics/grid.hpp"
#include "hcipnc/numerics/quadrature.hpp"
#include "hcipnc/numerics/roots.hpp"
#include "hcipnc/pnc.hpp"
#include "hcipnc/uehling.hpp"
