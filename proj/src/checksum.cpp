#include "ctsbench/checksum.hpp"

#include <openssl/evp.h>

#include <filesystem>
#include <memory>

#include "ctsbench/errors.hpp"
#include "ctsbench/io.hpp"

namespace ctsbench {

std::string sha256_hex(std::string_view bytes) {
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), &EVP_MD_CTX_free);
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), bytes.data(), bytes.size()) != 1 ||
      EVP_DigestFinal_ex(ctx.get(), digest, &len) != 1) {
    throw IoError("SHA-256 computation failed");
  }
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[digest[i] >> 4]);
    out.push_back(hex[digest[i] & 0xf]);
  }
  return out;
}

std::string file_checksum(const std::string& path) { return sha256_hex(read_file(path)); }

std::map<std::string, std::string> tree_checksums(
    const std::string& root, const std::function<bool(const std::string&)>& exclude) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (!fs::is_directory(root, ec)) throw IoError("not a directory: " + root);
  std::map<std::string, std::string> out;
  for (const auto& entry : fs::recursive_directory_iterator(root)) {
    if (!entry.is_regular_file()) continue;
    const std::string rel = fs::relative(entry.path(), root).generic_string();
    if (exclude && exclude(rel)) continue;
    out.emplace(rel, file_checksum(entry.path().string()));
  }
  return out;
}

std::string tree_checksum(const std::string& root,
                          const std::function<bool(const std::string&)>& exclude) {
  std::string listing;
  for (const auto& [path, sum] : tree_checksums(root, exclude)) listing += path + "\t" + sum + "\n";
  return sha256_hex(listing);
}

}  // namespace ctsbench
