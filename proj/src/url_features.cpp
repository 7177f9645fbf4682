#include "phishguard/url_features.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <numeric>

namespace phishguard {
namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

double count_char(std::string_view s, char c) {
  return static_cast<double>(std::count(s.begin(), s.end(), c));
}

double count_substr(std::string_view s, std::string_view needle) {
  double n = 0;
  for (auto pos = s.find(needle); pos != std::string_view::npos; pos = s.find(needle, pos + 1)) ++n;
  return n;
}

double count_digits(std::string_view s) {
  return static_cast<double>(
      std::count_if(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c) != 0; }));
}

bool is_ipv4(std::string_view host) {
  int parts = 0;
  while (true) {
    const auto dot = host.find('.');
    const auto octet = host.substr(0, dot);
    if (octet.empty() || octet.size() > 3) return false;
    int value = 0;
    const auto [ptr, ec] = std::from_chars(octet.data(), octet.data() + octet.size(), value);
    if (ec != std::errc{} || ptr != octet.data() + octet.size() || value > 255) return false;
    ++parts;
    if (dot == std::string_view::npos) break;
    host.remove_prefix(dot + 1);
  }
  return parts == 4;
}

bool is_ip_host(std::string_view host) {
  return is_ipv4(host) || (host.size() > 2 && host.front() == '[' && host.back() == ']');
}

// Alphanumeric runs.
std::vector<std::string_view> words(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || !std::isalnum(static_cast<unsigned char>(s[i]))) {
      if (i > start) out.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  return out;
}

struct WordStats {
  double shortest = 0, longest = 0, average = 0;
};

WordStats word_stats(const std::vector<std::string_view>& ws) {
  if (ws.empty()) return {};
  WordStats st;
  st.shortest = static_cast<double>(ws.front().size());
  double total = 0;
  for (auto w : ws) {
    const auto len = static_cast<double>(w.size());
    st.shortest = std::min(st.shortest, len);
    st.longest = std::max(st.longest, len);
    total += len;
  }
  st.average = total / static_cast<double>(ws.size());
  return st;
}

constexpr std::array<std::string_view, 14> kShorteners = {
    "bit.ly",   "bitly.com", "goo.gl",     "tinyurl.com", "t.co",    "ow.ly",  "is.gd",
    "buff.ly",  "adf.ly",    "cutt.ly",    "rb.gy",       "tiny.cc", "shorturl.at", "t.ly"};

bool is_shortener(std::string_view host) {
  if (host.starts_with("www.")) host.remove_prefix(4);
  return std::find(kShorteners.begin(), kShorteners.end(), host) != kShorteners.end();
}

const std::vector<std::string> kNames = {
    "length_url",         "length_hostname",   "ip",
    "nb_dots",            "nb_hyphens",        "nb_at",
    "nb_qm",              "nb_and",            "nb_or",
    "nb_eq",              "nb_underscore",     "nb_tilde",
    "nb_percent",         "nb_slash",          "nb_star",
    "nb_colon",           "nb_comma",          "nb_semicolumn",
    "nb_dollar",          "nb_space",          "nb_www",
    "nb_com",             "nb_dslash",         "http_in_path",
    "https_token",        "ratio_digits_url",  "ratio_digits_host",
    "punycode",           "port",              "nb_subdomains",
    "prefix_suffix",      "shortening_service", "length_words_raw",
    "shortest_words_raw", "shortest_word_host", "shortest_word_path",
    "longest_words_raw",  "longest_word_host", "longest_word_path",
    "avg_words_raw",      "avg_word_host",     "avg_word_path",
};

}  // namespace

UrlParts parse_url(std::string_view url) {
  const auto first = url.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) throw DataError("empty URL");
  url = url.substr(first, url.find_last_not_of(" \t\r\n") - first + 1);

  UrlParts parts;
  std::string_view rest = url;
  const auto sep = rest.find("://");
  if (sep != std::string_view::npos && rest.substr(0, sep).find_first_of("/?#") == std::string_view::npos) {
    parts.scheme = lower(rest.substr(0, sep));
    rest.remove_prefix(sep + 3);
  } else {
    parts.scheme = "http";
  }

  const auto authority_end = rest.find_first_of("/?#");
  std::string_view authority = rest.substr(0, authority_end);
  rest = authority_end == std::string_view::npos ? std::string_view{} : rest.substr(authority_end);

  if (const auto at = authority.rfind('@'); at != std::string_view::npos) authority.remove_prefix(at + 1);
  std::string_view host = authority;
  if (!authority.empty() && authority.front() == '[') {
    const auto close = authority.find(']');
    if (close != std::string_view::npos) {
      host = authority.substr(0, close + 1);
      if (close + 1 < authority.size() && authority[close + 1] == ':') {
        parts.port = authority.substr(close + 2);
      }
    }
  } else if (const auto colon = authority.rfind(':'); colon != std::string_view::npos) {
    host = authority.substr(0, colon);
    parts.port = authority.substr(colon + 1);
  }
  if (host.empty()) throw DataError("URL has no host: '" + std::string(url) + "'");
  parts.host = lower(host);

  const auto frag = rest.find('#');
  if (frag != std::string_view::npos) {
    parts.fragment = rest.substr(frag + 1);
    rest = rest.substr(0, frag);
  }
  const auto qm = rest.find('?');
  if (qm != std::string_view::npos) {
    parts.query = rest.substr(qm + 1);
    rest = rest.substr(0, qm);
  }
  parts.path = rest;
  return parts;
}

double UrlFeatureVector::at(std::string_view name) const {
  const auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) throw UsageError("no lexical feature named '" + std::string(name) + "'");
  return values[static_cast<std::size_t>(it - names.begin())];
}

std::span<const std::string> lexical_feature_names() { return kNames; }

UrlFeatureVector extract_lexical(std::string_view raw) {
  const UrlParts parts = parse_url(raw);
  const auto first = raw.find_first_not_of(" \t\r\n");
  const std::string_view url = raw.substr(first, raw.find_last_not_of(" \t\r\n") - first + 1);
  const bool ip = is_ip_host(parts.host);

  const std::string word_source = lower(parts.host + parts.path + "?" + parts.query);
  const auto url_words = words(word_source);
  const auto host_words = words(parts.host);
  const std::string lower_path = lower(parts.path);
  const auto path_words = words(lower_path);
  const WordStats raw_stats = word_stats(url_words);
  const WordStats host_stats = word_stats(host_words);
  const WordStats path_stats = word_stats(path_words);

  double labels = 1 + count_char(parts.host, '.');
  if (!parts.host.empty() && parts.host.back() == '.') labels -= 1;
  const double subdomains = ip ? 0.0 : std::max(0.0, labels - 2.0);

  const double length = static_cast<double>(url.size());
  const double host_length = static_cast<double>(parts.host.size());
  const auto contains = [](const std::vector<std::string_view>& ws, std::string_view needle) {
    return static_cast<double>(std::count_if(
        ws.begin(), ws.end(), [&](std::string_view w) { return w.find(needle) != std::string_view::npos; }));
  };

  UrlFeatureVector out;
  out.names = kNames;
  out.values = {
      length,
      host_length,
      ip ? 1.0 : 0.0,
      count_char(url, '.'),
      count_char(url, '-'),
      count_char(url, '@'),
      count_char(url, '?'),
      count_char(url, '&'),
      count_char(url, '|'),
      count_char(url, '='),
      count_char(url, '_'),
      count_char(url, '~'),
      count_char(url, '%'),
      count_char(url, '/'),
      count_char(url, '*'),
      count_char(url, ':'),
      count_char(url, ','),
      count_char(url, ';'),
      count_char(url, '$'),
      count_char(url, ' ') + count_substr(url, "%20"),
      contains(url_words, "www"),
      contains(url_words, "com"),
      (url.rfind("//") != std::string_view::npos && url.rfind("//") > 6) ? 1.0 : 0.0,
      count_substr(lower_path, "http"),
      parts.scheme == "https" ? 1.0 : 0.0,
      length > 0 ? count_digits(url) / length : 0.0,
      host_length > 0 ? count_digits(parts.host) / host_length : 0.0,
      parts.host.find("xn--") != std::string::npos ? 1.0 : 0.0,
      parts.port.empty() ? 0.0 : 1.0,
      subdomains,
      parts.host.find('-') != std::string::npos ? 1.0 : 0.0,
      is_shortener(parts.host) ? 1.0 : 0.0,
      static_cast<double>(url_words.size()),
      raw_stats.shortest,
      host_stats.shortest,
      path_stats.shortest,
      raw_stats.longest,
      host_stats.longest,
      path_stats.longest,
      raw_stats.average,
      host_stats.average,
      path_stats.average,
  };
  return out;
}

}  // namespace phishguard
