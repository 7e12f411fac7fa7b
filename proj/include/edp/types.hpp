#pragma once

namespace edp {

// All numerics in the library run in double precision.
using real = double;

} // namespace edp
