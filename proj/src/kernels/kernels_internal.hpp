#pragma once

namespace mdlq::detail {

// 2/√3 rounded once; every variant multiplies by this exact constant.
inline constexpr double kTwoOverSqrt3 = 1.1547005383792515290182975610039149;

}  // namespace mdlq::detail
