#include "wcg/digest.hpp"

#include <openssl/evp.h>

#include "wcg/common.hpp"

namespace wcg {

struct Sha256::Impl {
    EVP_MD_CTX* ctx = nullptr;
};

Sha256::Sha256() : impl_(std::make_unique<Impl>())
{
    impl_->ctx = EVP_MD_CTX_new();
    if (!impl_->ctx || EVP_DigestInit_ex(impl_->ctx, EVP_sha256(), nullptr) != 1)
        throw Error("cannot initialize SHA-256");
}

Sha256::~Sha256()
{
    EVP_MD_CTX_free(impl_->ctx);
}

void Sha256::update(std::string_view bytes)
{
    if (EVP_DigestUpdate(impl_->ctx, bytes.data(), bytes.size()) != 1)
        throw Error("SHA-256 update failed");
}

std::string Sha256::hex_digest()
{
    unsigned char out[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_DigestFinal_ex(impl_->ctx, out, &len) != 1)
        throw Error("SHA-256 finalization failed");
    static constexpr char hex[] = "0123456789abcdef";
    std::string s;
    s.reserve(2 * len);
    for (unsigned int i = 0; i < len; ++i) {
        s.push_back(hex[out[i] >> 4]);
        s.push_back(hex[out[i] & 15]);
    }
    return s;
}

std::string sha256_hex(std::string_view bytes)
{
    Sha256 h;
    h.update(bytes);
    return h.hex_digest();
}

} // namespace wcg
