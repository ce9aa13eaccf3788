#pragma once

namespace condal {

// Execution policy for the enumeration kernels. Parallel runs are
// bit-identical to serial ones: work is chunked on 64-bit word
// boundaries and witness selection always reduces to the smallest index.
enum class Exec { serial, parallel };

}  // namespace condal
