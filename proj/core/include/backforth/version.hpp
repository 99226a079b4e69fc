#ifndef BACKFORTH_VERSION_HPP
#define BACKFORTH_VERSION_HPP

#include <string_view>

namespace bf {

inline constexpr std::string_view kEngineVersion = "0.1.0";

}

#endif
