#pragma once

namespace qsync {
#ifdef QSYNC_VERSION_STRING
inline constexpr const char* kVersion = QSYNC_VERSION_STRING;
#else
inline constexpr const char* kVersion = "unknown";
#endif
} // namespace qsync
