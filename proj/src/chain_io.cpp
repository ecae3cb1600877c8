#include "chain_io.hpp"

#include <fstream>
#include <sstream>

#include "errors.hpp"
#include "json.hpp"

namespace rbchain {

namespace {

using json = nlohmann::ordered_json;

constexpr char kB64Alphabet[] = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";

[[noreturn]] void bad_field(const std::string& path, const std::string& what) {
  fail(Errc::parse_error, path + ": " + what);
}

const json& get_member(const json& obj, const std::string& path, const char* key) {
  if (!obj.is_object()) bad_field(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) bad_field(path + "." + key, "missing");
  return *it;
}

std::string get_string(const json& obj, const std::string& path, const char* key) {
  const json& v = get_member(obj, path, key);
  if (!v.is_string()) bad_field(path + "." + key, "expected a string");
  return v.get<std::string>();
}

std::int64_t get_integer(const json& obj, const std::string& path, const char* key) {
  const json& v = get_member(obj, path, key);
  if (!v.is_number_integer()) bad_field(path + "." + key, "expected an integer");
  return v.get<std::int64_t>();
}

BigInt get_hex(const json& obj, const std::string& path, const char* key) {
  std::string s = get_string(obj, path, key);
  if (!is_canonical_hex(s)) bad_field(path + "." + key, "not canonical lowercase hex");
  return from_hex(s);
}

HashAlg get_hash_alg(const json& obj, const std::string& path, const char* key) {
  std::string name = get_string(obj, path, key);
  auto alg = hash_alg_by_name(name);
  if (!alg) bad_field(path + "." + key, "unknown hash algorithm \"" + name + "\"");
  return *alg;
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    fail(Errc::parse_error, e.what());
  }
}

}  // namespace

std::string base64_encode(const std::vector<uint8_t>& data) {
  std::string out;
  out.reserve((data.size() + 2) / 3 * 4);
  size_t i = 0;
  for (; i + 3 <= data.size(); i += 3) {
    uint32_t v = (data[i] << 16) | (data[i + 1] << 8) | data[i + 2];
    out += kB64Alphabet[v >> 18];
    out += kB64Alphabet[(v >> 12) & 63];
    out += kB64Alphabet[(v >> 6) & 63];
    out += kB64Alphabet[v & 63];
  }
  if (i + 1 == data.size()) {
    uint32_t v = data[i] << 16;
    out += kB64Alphabet[v >> 18];
    out += kB64Alphabet[(v >> 12) & 63];
    out += "==";
  } else if (i + 2 == data.size()) {
    uint32_t v = (data[i] << 16) | (data[i + 1] << 8);
    out += kB64Alphabet[v >> 18];
    out += kB64Alphabet[(v >> 12) & 63];
    out += kB64Alphabet[(v >> 6) & 63];
    out += '=';
  }
  return out;
}

std::vector<uint8_t> base64_decode(const std::string& text) {
  auto value_of = [](char c) -> int {
    if (c >= 'A' && c <= 'Z') return c - 'A';
    if (c >= 'a' && c <= 'z') return c - 'a' + 26;
    if (c >= '0' && c <= '9') return c - '0' + 52;
    if (c == '+') return 62;
    if (c == '/') return 63;
    return -1;
  };
  if (text.size() % 4 != 0) fail(Errc::parse_error, "base64 length must be a multiple of 4");
  std::vector<uint8_t> out;
  out.reserve(text.size() / 4 * 3);
  for (size_t i = 0; i < text.size(); i += 4) {
    bool last = i + 4 == text.size();
    int pad = 0;
    if (last && text[i + 3] == '=') pad = text[i + 2] == '=' ? 2 : 1;
    int v[4] = {0, 0, 0, 0};
    for (int k = 0; k < 4 - pad; ++k) {
      v[k] = value_of(text[i + k]);
      if (v[k] < 0) fail(Errc::parse_error, "invalid base64 character");
    }
    uint32_t bits = (v[0] << 18) | (v[1] << 12) | (v[2] << 6) | v[3];
    out.push_back(bits >> 16);
    if (pad < 2) out.push_back((bits >> 8) & 0xff);
    if (pad < 1) out.push_back(bits & 0xff);
    // Reject non-canonical padding (leftover bits must be zero).
    if (pad == 2 && (v[1] & 0x0f)) fail(Errc::parse_error, "non-canonical base64 padding");
    if (pad == 1 && (v[2] & 0x03)) fail(Errc::parse_error, "non-canonical base64 padding");
  }
  return out;
}

std::string serialize_chain(const ChainGraph& cg) {
  json doc;
  doc["format_version"] = kChainFormatVersion;
  json header;
  header["chain_id"] = cg.chain_id;
  header["hash_alg"] = std::string(hash_alg_name(cg.params.hash_alg));
  header["modulus_n"] = to_hex(cg.params.modulus_n);
  header["genesis_prefix"] = to_hex(cg.params.genesis_prefix);
  doc["header"] = std::move(header);
  json blocks = json::array();
  for (const Block& b : cg.blocks) {
    json jb;
    jb["kind"] = b.kind == BlockKind::intermediate ? "intermediate" : "normal";
    jb["parent"] = b.parent;
    jb["prefix"] = to_hex(b.prefix);
    jb["content"] = base64_encode(b.content);
    jb["suffix"] = to_hex(b.suffix);
    jb["offset"] = b.offset;
    blocks.push_back(std::move(jb));
  }
  doc["blocks"] = std::move(blocks);
  return doc.dump(2) + "\n";
}

ChainGraph parse_chain(const std::string& text, bool verify) {
  json doc = parse_json(text);
  if (get_integer(doc, "$", "format_version") != kChainFormatVersion)
    bad_field("$.format_version", "unsupported version");

  ChainGraph cg;
  const json& header = get_member(doc, "$", "header");
  cg.chain_id = get_string(header, "$.header", "chain_id");
  cg.params.hash_alg = get_hash_alg(header, "$.header", "hash_alg");
  cg.params.modulus_n = get_hex(header, "$.header", "modulus_n");
  cg.params.genesis_prefix = get_hex(header, "$.header", "genesis_prefix");

  const json& blocks = get_member(doc, "$", "blocks");
  if (!blocks.is_array()) bad_field("$.blocks", "expected an array");
  for (size_t i = 0; i < blocks.size(); ++i) {
    std::string path = "$.blocks[" + std::to_string(i) + "]";
    const json& jb = blocks[i];
    Block b;
    std::string kind = get_string(jb, path, "kind");
    if (kind == "normal")
      b.kind = BlockKind::normal;
    else if (kind == "intermediate")
      b.kind = BlockKind::intermediate;
    else
      bad_field(path + ".kind", "expected \"normal\" or \"intermediate\"");
    std::int64_t parent = get_integer(jb, path, "parent");
    if (parent < -1 || parent >= static_cast<std::int64_t>(blocks.size()))
      bad_field(path + ".parent", "index out of range");
    b.parent = static_cast<int>(parent);
    b.prefix = get_hex(jb, path, "prefix");
    try {
      b.content = base64_decode(get_string(jb, path, "content"));
    } catch (const Error& e) {
      bad_field(path + ".content", e.what());
    }
    b.suffix = get_hex(jb, path, "suffix");
    std::int64_t offset = get_integer(jb, path, "offset");
    if (offset < INT32_MIN || offset > INT32_MAX) bad_field(path + ".offset", "out of range");
    b.offset = static_cast<int>(offset);
    cg.blocks.push_back(std::move(b));
  }

  if (verify) {
    VerificationReport report = verify_chain(cg);
    if (!report.ok) {
      std::string detail = "chain fails verification";
      for (const std::string& line : report.lines())
        if (line.find("FAIL") != std::string::npos) {
          detail = line;
          break;
        }
      fail(Errc::integrity_error, detail);
    }
  }
  return cg;
}

std::string serialize_key(const KeyFileData& kf) {
  json doc;
  doc["format_version"] = kChainFormatVersion;
  json pub;
  pub["modulus_n"] = to_hex(kf.params.modulus_n);
  pub["hash_alg"] = std::string(hash_alg_name(kf.params.hash_alg));
  doc["public"] = std::move(pub);
  if (kf.has_private) {
    json prv;
    prv["p"] = to_hex(kf.sk.p);
    prv["q"] = to_hex(kf.sk.q);
    doc["private"] = std::move(prv);
  }
  return doc.dump(2) + "\n";
}

KeyFileData parse_key(const std::string& text) {
  json doc = parse_json(text);
  if (get_integer(doc, "$", "format_version") != kChainFormatVersion)
    bad_field("$.format_version", "unsupported version");

  KeyFileData kf;
  const json& pub = get_member(doc, "$", "public");
  kf.params.modulus_n = get_hex(pub, "$.public", "modulus_n");
  kf.params.hash_alg = get_hash_alg(pub, "$.public", "hash_alg");

  if (doc.contains("private")) {
    const json& prv = doc["private"];
    BigInt p = get_hex(prv, "$.private", "p");
    BigInt q = get_hex(prv, "$.private", "q");
    kf.sk = PrivateKey{p, q, (p - 1) * (q - 1)};
    validate_private_key(kf.sk, kf.params.modulus_n);
    kf.has_private = true;
  }
  return kf;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::io_error, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (!in.good() && !in.eof()) fail(Errc::io_error, "cannot read " + path.string());
  return std::move(buf).str();
}

void write_file_atomic(const std::filesystem::path& path, const std::string& text) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) fail(Errc::io_error, "cannot open " + tmp.string());
    out << text;
    out.flush();
    if (!out.good()) fail(Errc::io_error, "cannot write " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) fail(Errc::io_error, "cannot replace " + path.string() + ": " + ec.message());
}

}  // namespace rbchain
