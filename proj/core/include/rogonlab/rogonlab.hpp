#pragma once

#include "rogonlab/errors.hpp"
#include "rogonlab/fft.hpp"
#include "rogonlab/parallel.hpp"
#include "rogonlab/residual.hpp"
#include "rogonlab/rogon.hpp"
#include "rogonlab/solver.hpp"
#include "rogonlab/stencil.hpp"
#include "rogonlab/types.hpp"
#include "rogonlab/version.hpp"
