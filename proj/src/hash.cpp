#include "dcc/hash.hpp"

#include <openssl/evp.h>

#include <cstring>
#include <stdexcept>

namespace dcc {

namespace {

constexpr char kHexDigits[] = "0123456789abcdef";

class Sha256Ctx {
 public:
  Sha256Ctx() : ctx_(EVP_MD_CTX_new()) {
    if (!ctx_) throw std::runtime_error("EVP_MD_CTX_new failed");
  }
  ~Sha256Ctx() { EVP_MD_CTX_free(ctx_); }
  Sha256Ctx(const Sha256Ctx&) = delete;
  Sha256Ctx& operator=(const Sha256Ctx&) = delete;

  void reset() {
    if (EVP_DigestInit_ex(ctx_, EVP_sha256(), nullptr) != 1) {
      throw std::runtime_error("EVP_DigestInit_ex failed");
    }
  }
  void update(std::string_view data) {
    EVP_DigestUpdate(ctx_, data.data(), data.size());
  }
  Digest256 finish() {
    Digest256 out;
    unsigned int len = 0;
    EVP_DigestFinal_ex(ctx_, out.bytes.data(), &len);
    return out;
  }

 private:
  EVP_MD_CTX* ctx_;
};

// One context per thread; init/reset is the cheap path.
thread_local Sha256Ctx g_ctx;

}  // namespace

std::string Digest256::hex() const {
  std::string out(64, '0');
  for (std::size_t i = 0; i < bytes.size(); ++i) {
    out[2 * i] = kHexDigits[bytes[i] >> 4];
    out[2 * i + 1] = kHexDigits[bytes[i] & 0xf];
  }
  return out;
}

Digest256 sha256(std::string_view data) {
  g_ctx.reset();
  g_ctx.update(data);
  return g_ctx.finish();
}

std::string sha256_hex(std::string_view data) { return sha256(data).hex(); }

Digest256 digest_fields(std::initializer_list<std::string_view> fields) {
  g_ctx.reset();
  for (std::string_view field : fields) {
    char len[8];
    std::uint64_t n = field.size();
    for (int i = 7; i >= 0; --i) {
      len[i] = static_cast<char>(n & 0xff);
      n >>= 8;
    }
    g_ctx.update(std::string_view(len, 8));
    g_ctx.update(field);
  }
  return g_ctx.finish();
}

}  // namespace dcc
