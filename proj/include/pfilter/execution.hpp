#pragma once

namespace pfilter {

/// Selects the reference serial kernel or its OpenMP counterpart. Both
/// produce identical results; the serial one is kept for testing.
enum class Execution { Serial, Parallel };

}  // namespace pfilter
