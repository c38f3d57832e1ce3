#include "reqcomp/util/url.h"

#include "reqcomp/util/errors.h"

namespace reqcomp {

BaseUrl parse_base_url(std::string_view url) {
  auto scheme_end = url.find("://");
  if (scheme_end == std::string_view::npos) throw ConfigError("URL needs a scheme: " + std::string(url));
  std::string_view scheme = url.substr(0, scheme_end);
  if (scheme != "http" && scheme != "https") throw ConfigError("unsupported URL scheme: " + std::string(url));
  auto path_start = url.find('/', scheme_end + 3);
  BaseUrl out;
  out.origin = std::string(url.substr(0, path_start));
  if (out.origin.size() == scheme_end + 3) throw ConfigError("URL has no host: " + std::string(url));
  if (path_start != std::string_view::npos) {
    std::string_view path = url.substr(path_start);
    while (!path.empty() && path.back() == '/') path.remove_suffix(1);
    out.path = std::string(path);
  }
  return out;
}

std::string url_encode(std::string_view s) {
  static const char* hex = "0123456789ABCDEF";
  std::string out;
  for (unsigned char c : s) {
    if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '-' || c == '_' ||
        c == '.' || c == '~') {
      out += static_cast<char>(c);
    } else if (c == ' ') {
      out += '+';
    } else {
      out += '%';
      out += hex[c >> 4];
      out += hex[c & 15];
    }
  }
  return out;
}

}  // namespace reqcomp
