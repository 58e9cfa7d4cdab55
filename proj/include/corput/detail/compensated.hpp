#pragma once

#include <cmath>

namespace corput::detail {

// Neumaier variant of compensated summation: the correction also catches the
// case where the incoming term dominates the running sum.
template <class T>
struct CompensatedSum {
    T sum = 0;
    T comp = 0;

    void add(T x) {
        const T t = sum + x;
        if (std::abs(sum) >= std::abs(x))
            comp += (sum - t) + x;
        else
            comp += (x - t) + sum;
        sum = t;
    }

    T value() const { return sum + comp; }
};

} // namespace corput::detail
