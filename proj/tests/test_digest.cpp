#include <catch2/catch_amalgamated.hpp>

#include <string>

#include "tracegen/digest.hpp"

using namespace tracegen;

// FIPS 180-4 example vectors.
TEST_CASE("sha256 standard vectors") {
  CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  CHECK(sha256_hex("abcdbcdecdefdefgefghfghighijhijkijkljklmklmnlmnomnopnopq") ==
        "248d6a61d20638b8e5c026930c3e6039a33ce45964ff2167f6ecedd419db06c1");
}

TEST_CASE("sha256 million a") {
  Sha256 h;
  const std::string chunk(1000, 'a');
  for (int i = 0; i < 1000; ++i) h.update(chunk);
  CHECK(to_hex(h.finish()) ==
        "cdc76e5c9914fb9281a1c7e284d73e67f1809a48a497200e046d39ccc7112cd0");
}

TEST_CASE("chunked updates match one-shot hashing") {
  const std::string msg = "The quick brown fox jumps over the lazy dog, repeatedly, until the "
                          "message spills across several 64-byte blocks for good measure.";
  Sha256 h;
  for (char c : msg) h.update(std::string_view(&c, 1));
  CHECK(to_hex(h.finish()) == sha256_hex(msg));
}

TEST_CASE("reset starts a fresh digest") {
  Sha256 h;
  h.update("garbage");
  h.reset();
  h.update("abc");
  CHECK(to_hex(h.finish()) == sha256_hex("abc"));
}
