#pragma once

#include "fracfem/analysis.hpp"
#include "fracfem/assembly.hpp"
#include "fracfem/coefficients.hpp"
#include "fracfem/dimension.hpp"
#include "fracfem/experiment.hpp"
#include "fracfem/mesh.hpp"
#include "fracfem/microstructure.hpp"
#include "fracfem/norms.hpp"
#include "fracfem/oracle.hpp"
#include "fracfem/piecewise_linear.hpp"
#include "fracfem/point_function.hpp"
#include "fracfem/random.hpp"
#include "fracfem/rational.hpp"
#include "fracfem/similarity.hpp"
#include "fracfem/tridiagonal.hpp"
