#include "phishguard/url_features.hpp"

#include "phishguard/random.hpp"

#include <doctest.h>

using namespace phishguard;

TEST_SUITE("url_features") {
  TEST_CASE("plain http url") {
    const auto f = extract_lexical("http://example.com");
    CHECK(f.at("length_url") == 18);
    CHECK(f.at("nb_dots") == 1);
    CHECK(f.at("https_token") == 0);
    CHECK(f.at("ip") == 0);
    CHECK(f.at("nb_subdomains") == 0);
    CHECK(f.at("length_hostname") == 11);
  }

  TEST_CASE("https url with subdomain, path and query") {
    const auto f = extract_lexical("https://a.b.co/login?x=1");
    CHECK(f.at("nb_dots") == 2);
    CHECK(f.at("nb_slash") == 3);  // "//" plus the path separator
    CHECK(f.at("https_token") == 1);
    CHECK(f.at("nb_subdomains") == 1);
    CHECK(f.at("nb_qm") == 1);
    CHECK(f.at("nb_eq") == 1);
    CHECK(f.at("nb_colon") == 1);
  }

  TEST_CASE("dotted-quad host") {
    CHECK(extract_lexical("http://192.168.0.1/x").at("ip") == 1);
    CHECK(extract_lexical("http://192.168.0.300/x").at("ip") == 0);
    CHECK(extract_lexical("http://[::1]:8080/").at("ip") == 1);
    CHECK(extract_lexical("http://192.168.0.1/x").at("nb_subdomains") == 0);
  }

  TEST_CASE("parsing details") {
    const UrlParts p = parse_url("HTTPS://user:pw@Sub.Example.com:8443/a/b.php?x=1&y=2#frag");
    CHECK(p.scheme == "https");
    CHECK(p.host == "sub.example.com");
    CHECK(p.port == "8443");
    CHECK(p.path == "/a/b.php");
    CHECK(p.query == "x=1&y=2");
    CHECK(p.fragment == "frag");
    CHECK(parse_url("example.com/path").scheme == "http");
    CHECK(parse_url("example.com/path").host == "example.com");
  }

  TEST_CASE("other lexical flags") {
    const auto f = extract_lexical("http://www.secure-login.xn--pple-43d.com:81/http/www.bank.com//x?a=1&b=2");
    CHECK(f.at("prefix_suffix") == 1);
    CHECK(f.at("punycode") == 1);
    CHECK(f.at("port") == 1);
    CHECK(f.at("http_in_path") == 1);
    CHECK(f.at("nb_dslash") == 1);
    CHECK(f.at("nb_and") == 1);
    CHECK(f.at("nb_www") == 2);
    CHECK(extract_lexical("https://bit.ly/abc").at("shortening_service") == 1);
    CHECK(extract_lexical("http://a.com/x y%20z").at("nb_space") == 2);
  }

  TEST_CASE("word statistics") {
    const auto f = extract_lexical("http://ab.cdef.com/xyz/q");
    // words: ab cdef com xyz q
    CHECK(f.at("length_words_raw") == 5);
    CHECK(f.at("shortest_words_raw") == 1);
    CHECK(f.at("longest_words_raw") == 4);
    CHECK(f.at("avg_words_raw") == doctest::Approx(13.0 / 5.0));
    CHECK(f.at("shortest_word_host") == 2);
    CHECK(f.at("longest_word_path") == 3);
    CHECK(f.at("ratio_digits_url") == 0);
  }

  TEST_CASE("errors") {
    CHECK_THROWS_AS(extract_lexical(""), DataError);
    CHECK_THROWS_AS(extract_lexical("   "), DataError);
    CHECK_THROWS_AS(extract_lexical("http:///path"), DataError);
    CHECK_THROWS_AS(extract_lexical("http://example.com").at("not_a_feature"), UsageError);
  }

  TEST_CASE("feature vector shape and value domains") {
    const auto f = extract_lexical("https://x.y.z.example.org/a-b_c?d=e");
    CHECK(f.names.size() == f.values.size());
    CHECK(std::equal(f.names.begin(), f.names.end(), lexical_feature_names().begin()));
    for (std::size_t i = 0; i < f.values.size(); ++i) {
      CAPTURE(f.names[i]);
      CHECK(f.values[i] >= 0.0);
      if (f.names[i].starts_with("nb_") || f.names[i].starts_with("length_")) {
        CHECK(f.values[i] == std::floor(f.values[i]));
      }
    }
  }

  TEST_CASE("property: appending k dots to the path adds k to nb_dots and length_url") {
    const char* bases[] = {"http://example.com/a", "https://a.b.c.d/x/y?q=1", "sub.site.org/path/",
                           "http://10.0.0.1/z"};
    Rng rng(7);
    for (const char* base : bases) {
      const std::string url(base);
      const auto q = url.find('?');
      for (int trial = 0; trial < 10; ++trial) {
        const auto k = static_cast<std::size_t>(rng.uniform_index(12));
        std::string extended = url;
        extended.insert(q == std::string::npos ? extended.size() : q, std::string(k, '.'));
        const auto a = extract_lexical(url);
        const auto b = extract_lexical(extended);
        CHECK(b.at("nb_dots") - a.at("nb_dots") == static_cast<double>(k));
        CHECK(b.at("length_url") - a.at("length_url") == static_cast<double>(k));
      }
    }
  }

  TEST_CASE("extraction is pure") {
    const auto a = extract_lexical("https://login.paypal.com.verify-account.ru/signin?id=12");
    const auto b = extract_lexical("https://login.paypal.com.verify-account.ru/signin?id=12");
    CHECK(a.values == b.values);
  }
}
