#pragma once

// Umbrella header for the frenet_svd library.

#include "frenet_svd/errors.hpp"
#include "frenet_svd/rational.hpp"
#include "frenet_svd/hankel.hpp"
#include "frenet_svd/ortho_poly.hpp"
#include "frenet_svd/precision.hpp"
#include "frenet_svd/linalg.hpp"
#include "frenet_svd/curve.hpp"
#include "frenet_svd/frenet.hpp"
#include "frenet_svd/frenet_ode.hpp"
#include "frenet_svd/quadrature.hpp"
#include "frenet_svd/covariance.hpp"
#include "frenet_svd/local_svd.hpp"
#include "frenet_svd/csv.hpp"
