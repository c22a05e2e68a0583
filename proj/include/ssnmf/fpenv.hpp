#pragma once

#if defined(__SSE2__)
#include <xmmintrin.h>
#endif

namespace ssnmf {

/// Flushes subnormal results and operands to zero on this thread while in
/// scope, then restores the previous mode. Multiplicative updates drive
/// factor entries geometrically toward zero, and arithmetic on subnormals is
/// two orders of magnitude slower on x86. No-op on other targets.
class FlushSubnormalsScope {
public:
  FlushSubnormalsScope() noexcept {
#if defined(__SSE2__)
    saved_ = _mm_getcsr();
    _mm_setcsr(saved_ | 0x8040u); // FTZ | DAZ
#endif
  }
  ~FlushSubnormalsScope() {
#if defined(__SSE2__)
    _mm_setcsr(saved_);
#endif
  }
  FlushSubnormalsScope(const FlushSubnormalsScope&) = delete;
  FlushSubnormalsScope& operator=(const FlushSubnormalsScope&) = delete;

private:
  unsigned int saved_ = 0;
};

} // namespace ssnmf
