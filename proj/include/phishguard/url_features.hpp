#pragma once

#include "phishguard/types.hpp"

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace phishguard {

/// Pieces of a URL as used by the lexical features.
struct UrlParts {
  std::string scheme;  // lowercased, "http" when absent
  std::string host;    // lowercased, without userinfo or port
  std::string port;    // empty when absent
  std::string path;    // starts with '/' when present
  std::string query;   // without '?'
  std::string fragment;
};

/// Throws DataError on an empty string or a URL without a host.
UrlParts parse_url(std::string_view url);

/// Lexical features computable from the URL string alone. Names match the
/// columns of the training CSV; definitions are listed in docs/url_features.md.
struct UrlFeatureVector {
  std::vector<std::string> names;
  std::vector<double> values;

  double at(std::string_view name) const;
};

/// Names of every feature extract_lexical() produces, in output order.
std::span<const std::string> lexical_feature_names();

UrlFeatureVector extract_lexical(std::string_view url);

/// Caller-supplied values for features that cannot be derived lexically.
using FeatureOverrides = std::map<std::string, double, std::less<>>;

}  // namespace phishguard
