#pragma once

#include <cstdint>
#include <optional>

#include <boost/multiprecision/cpp_int.hpp>

namespace weilsum {

// Exact integer type for cyclotomic coefficients. Products of Weil sums
// reach magnitude q^4, which overflows 64-bit integers for q near 2^16.
using BigInt = boost::multiprecision::cpp_int;

inline bool fits_int64(const BigInt& x) {
    return x >= std::numeric_limits<std::int64_t>::min() &&
           x <= std::numeric_limits<std::int64_t>::max();
}

inline std::int64_t to_int64(const BigInt& x) {
    return x.convert_to<std::int64_t>();
}

inline double to_double(const BigInt& x) {
    return x.convert_to<double>();
}

}  // namespace weilsum
