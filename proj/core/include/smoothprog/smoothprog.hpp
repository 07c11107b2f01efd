#pragma once

#include "smoothprog/contour.hpp"
#include "smoothprog/dirichlet.hpp"
#include "smoothprog/distance.hpp"
#include "smoothprog/errors.hpp"
#include "smoothprog/mellin.hpp"
#include "smoothprog/primes.hpp"
#include "smoothprog/quadrature.hpp"
#include "smoothprog/saddle.hpp"
#include "smoothprog/smooth.hpp"
#include "smoothprog/weight.hpp"
