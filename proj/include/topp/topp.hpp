#pragma once

#include "topp/dynamics.hpp"
#include "topp/errors.hpp"
#include "topp/io.hpp"
#include "topp/model.hpp"
#include "topp/numeric_eigen.hpp"
#include "topp/quadratic.hpp"
#include "topp/sampling.hpp"
#include "topp/stability.hpp"
#include "topp/verification.hpp"
