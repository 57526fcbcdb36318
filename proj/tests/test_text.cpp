#include <doctest.h>

#include "hotline/text.hpp"

using namespace hotline;

TEST_SUITE("text") {

TEST_CASE("u8_length counts code points, not bytes") {
  CHECK(u8_length("") == 0);
  CHECK(u8_length("abc") == 3);
  CHECK(u8_length("你好") == 2);      // 6 bytes
  CHECK(u8_length("a你b好c") == 5);
  CHECK(u8_length("…") == 1);         // 3 bytes
  CHECK(u8_length("🙂") == 1);        // 4 bytes
}

TEST_CASE("u8_prefix cuts on character boundaries") {
  CHECK(u8_prefix("你好吗", 2) == "你好");
  CHECK(u8_prefix("abc", 5) == "abc");
  CHECK(u8_prefix("你好", 0) == "");
  CHECK(u8_truncate("a你b", 2) == "a你");
}

TEST_CASE("u8_byte_offset") {
  CHECK(u8_byte_offset("你好", 1) == 3);
  CHECK(u8_byte_offset("你好", 2) == 6);
  CHECK(u8_byte_offset("ab", 9) == 2);
}

TEST_CASE("render_template substitutes known keys only") {
  CHECK(render_template("x {a} y {b}", {{"a", "1"}, {"b", "2"}}) == "x 1 y 2");
  CHECK(render_template("{a}{a}", {{"a", "z"}}) == "zz");
  // Unknown placeholders and bare braces survive, so JSON examples inside
  // prompt templates stay intact.
  CHECK(render_template(R"({"risk_score": 1} and {a})", {{"a", "v"}}) ==
        R"({"risk_score": 1} and v)");
  CHECK(render_template("tail {unclosed", {}) == "tail {unclosed");
}

}  // TEST_SUITE
