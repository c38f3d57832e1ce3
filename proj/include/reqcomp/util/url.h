#pragma once

#include <string>
#include <string_view>

namespace reqcomp {

// "https://host:8080/api" -> origin "https://host:8080", path "/api".
struct BaseUrl {
  std::string origin;
  std::string path;  // no trailing slash; empty for the root
};

BaseUrl parse_base_url(std::string_view url);

// application/x-www-form-urlencoded component encoding.
std::string url_encode(std::string_view s);

}  // namespace reqcomp
