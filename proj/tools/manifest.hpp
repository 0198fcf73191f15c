#pragma once

#include <openssl/evp.h>

#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "syzmirror/io.hpp"

namespace syz::cli {

inline std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw InvariantError("SHA-256 digest failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 15];
  }
  return out;
}

// Records what a run read and wrote. Inputs are keyed by the path given on
// the command line, outputs by path or "stdout".
class RunManifest {
 public:
  std::vector<std::string> command;
  std::map<std::string, std::string> inputs, outputs;
  std::optional<std::uint64_t> seed;
  std::string version;

  std::string read_input(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open input file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    inputs[path] = sha256_hex(ss.str());
    return ss.str();
  }

  json to_json() const {
    json j = {{"command", command}, {"inputs", inputs}, {"outputs", outputs}, {"version", version}};
    j["seed"] = seed ? json(*seed) : json(nullptr);
    return j;
  }
};

}  // namespace syz::cli
