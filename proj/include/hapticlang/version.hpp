#pragma once

#define HAPTICLANG_VERSION "0.1.0"

namespace hapticlang {
inline const char* version() { return HAPTICLANG_VERSION; }
}  // namespace hapticlang
