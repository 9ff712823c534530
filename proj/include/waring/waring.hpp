#pragma once

#include "waring/error.hpp"
#include "waring/scalar.hpp"
#include "waring/poly.hpp"
#include "waring/param_poly.hpp"
#include "waring/linalg.hpp"
#include "waring/catalecticant.hpp"
#include "waring/bounds.hpp"
#include "waring/oracles.hpp"
#include "waring/numeric.hpp"
#include "waring/additivity.hpp"
#include "waring/certificate.hpp"
