#pragma once

namespace partigrowth {

inline constexpr const char* kVersion = "0.1.0";
/// Bumped whenever a record layout changes.
inline constexpr int kSchemaVersion = 1;

}  // namespace partigrowth
