#ifndef ALPHA_CLI_HPP
#define ALPHA_CLI_HPP

namespace alpha {

// Closed-form y-velocity at (1,0) of the unit-circle patch with theta = -1:
//   v_y(alpha) = 1 / ((1 - alpha) B((4 - alpha)/2, -alpha/2)).
// Reference value for the `verify` subcommand.
double circle_reference_vy(double alpha);

int run_cli(int argc, char** argv);

} // namespace alpha

#endif
