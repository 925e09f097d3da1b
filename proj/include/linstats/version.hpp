#ifndef LINSTATS_VERSION_HPP
#define LINSTATS_VERSION_HPP

namespace linstats {
inline constexpr const char* version = "0.1.0";
}

#endif
