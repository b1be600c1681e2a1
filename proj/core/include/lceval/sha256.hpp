#ifndef LCEVAL_SHA256_HPP
#define LCEVAL_SHA256_HPP

#include <string>
#include <string_view>

namespace lceval {

/// SHA-256 of `data` as a lowercase hex string (FIPS 180-4).
std::string sha256_hex(std::string_view data);

}  // namespace lceval

#endif  // LCEVAL_SHA256_HPP
