#pragma once

// Data-parallel kernels come in two flavours: a plain serial loop kept as the
// reference implementation, and an OpenMP version. Both produce bitwise
// identical results; tests compare them and bench/ times them.

namespace discrimlab {

enum class Exec { Serial, Parallel };

/// Sets the OpenMP team size; n <= 0 keeps the runtime default.
void set_thread_count(int n);
int thread_count();

}  // namespace discrimlab
