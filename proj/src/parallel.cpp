#include "knotcensus/parallel.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace knotcensus {

int parallel_workers() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

}  // namespace knotcensus
