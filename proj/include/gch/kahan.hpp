#ifndef GCH_KAHAN_HPP
#define GCH_KAHAN_HPP

#include <complex>

namespace gch {

// Kahan compensated accumulator.  All long series loops in the library run
// through one of these; the nested transfer sums cancel heavily for
// moderate |z| and plain accumulation loses digits there.
template <typename T = double>
struct kahan_sum {
    T sum{};
    T comp{};

    void add(T x) {
        const T y = x - comp;
        const T t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    T value() const { return sum; }
};

using kahan_real = kahan_sum<double>;
using kahan_complex = kahan_sum<std::complex<double>>;

} // namespace gch

#endif
