#ifndef CONGA_PARALLEL_H_
#define CONGA_PARALLEL_H_

#ifdef _OPENMP
#include <omp.h>
#endif

namespace conga {

// Sets the OpenMP team size for the enclosing scope; 0 leaves it unchanged.
class ScopedThreads {
 public:
  explicit ScopedThreads(int threads) {
#ifdef _OPENMP
    previous_ = omp_get_max_threads();
    if (threads > 0) omp_set_num_threads(threads);
#else
    (void)threads;
#endif
  }
  ~ScopedThreads() {
#ifdef _OPENMP
    omp_set_num_threads(previous_);
#endif
  }
  ScopedThreads(const ScopedThreads&) = delete;
  ScopedThreads& operator=(const ScopedThreads&) = delete;

 private:
  int previous_ = 1;
};

inline int available_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace conga

#endif  // CONGA_PARALLEL_H_
