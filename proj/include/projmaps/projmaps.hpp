#pragma once

#include "projmaps/decompose.hpp"
#include "projmaps/error.hpp"
#include "projmaps/finite_field.hpp"
#include "projmaps/io.hpp"
#include "projmaps/linalg.hpp"
#include "projmaps/poly.hpp"
#include "projmaps/rational.hpp"
#include "projmaps/resultant.hpp"
#include "projmaps/stability.hpp"
#include "projmaps/verify.hpp"
#include "projmaps/weights.hpp"
