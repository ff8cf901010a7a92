#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace bpg {

using BigInt = boost::multiprecision::cpp_int;

}  // namespace bpg
