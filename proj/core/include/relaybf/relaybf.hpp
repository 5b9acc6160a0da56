#pragma once

#include "relaybf/certifier.hpp"
#include "relaybf/dual_solver.hpp"
#include "relaybf/errors.hpp"
#include "relaybf/instance_gen.hpp"
#include "relaybf/io.hpp"
#include "relaybf/numerics.hpp"
#include "relaybf/oracle.hpp"
#include "relaybf/primal_solver.hpp"
#include "relaybf/problem.hpp"
#include "relaybf/solver.hpp"
#include "relaybf/sweep.hpp"
