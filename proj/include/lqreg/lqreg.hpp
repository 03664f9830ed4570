#pragma once

// Umbrella header: least-quartic regression, co-moment analytics, synthetic
// generators and the batch risk pipeline.  The CLI surface (table
// serialization, command dispatch) lives separately in lqreg/cli.hpp.

#include "lqreg/errors.hpp"
#include "lqreg/sample.hpp"
#include "lqreg/moments.hpp"
#include "lqreg/solver.hpp"
#include "lqreg/synth.hpp"
#include "lqreg/capm.hpp"
