// Execution policy for the heavy kernels.
//
// Every kernel that shards work keeps a plain serial code path next to the
// OpenMP one.  The serial path is the reference: tests run both and compare,
// and bench_kernels times them against each other.

#pragma once

namespace knotcensus {

enum class ExecPolicy {
    Serial,
    Parallel,
};

// Worker count the Parallel policy would use (1 when built without OpenMP).
int parallel_workers();

}  // namespace knotcensus
