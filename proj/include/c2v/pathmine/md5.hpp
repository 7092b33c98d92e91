#pragma once

#include <string>
#include <string_view>

namespace c2v::pathmine {

// Lowercase hex MD5 digest of the raw bytes of `data`.
std::string md5_hex(std::string_view data);

// Path identifier: md5_hex of the canonical path string (UTF-8).
inline std::string hash_path(std::string_view canonical) { return md5_hex(canonical); }

}  // namespace c2v::pathmine
