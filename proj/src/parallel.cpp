#include "frontlab/parallel.hpp"

#include <omp.h>

#include <cstdlib>
#include <string>
#include <thread>

namespace frontlab {
namespace {

int initial_thread_count() {
  if (const char* env = std::getenv("FRONTLAB_THREADS")) {
    try {
      int n = std::stoi(env);
      if (n > 0) return n;
    } catch (...) {
    }
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

int& current() {
  static int n = initial_thread_count();
  return n;
}

}  // namespace

int thread_count() { return current(); }

void set_thread_count(int n) { current() = n > 0 ? n : 1; }

}  // namespace frontlab
