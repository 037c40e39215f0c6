#pragma once

namespace ndcwt {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace ndcwt
