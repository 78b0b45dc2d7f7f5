#include "vlb/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace vlb {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

}  // namespace

KeyValueConfig KeyValueConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return from_text(buffer.str());
}

KeyValueConfig KeyValueConfig::from_text(const std::string& text) {
  KeyValueConfig cfg;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("config line " + std::to_string(line_no) +
                               ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw std::runtime_error("config line " + std::to_string(line_no) +
                                              ": empty key");
    for (const auto& [k, v] : cfg.entries_)
      if (k == key)
        throw std::runtime_error("config: duplicate key '" + key + "'");
    cfg.entries_.emplace_back(key, value);
  }
  return cfg;
}

const std::string* KeyValueConfig::find(const std::string& key) {
  for (const auto& [k, v] : entries_)
    if (k == key) {
      consumed_.insert(key);
      return &v;
    }
  return nullptr;
}

bool KeyValueConfig::has(const std::string& key) const {
  for (const auto& [k, v] : entries_)
    if (k == key) return true;
  return false;
}

std::string KeyValueConfig::get_string(const std::string& key,
                                       const std::string& fallback) {
  const std::string* v = find(key);
  return v ? *v : fallback;
}

double KeyValueConfig::get_double(const std::string& key, double fallback) {
  const std::string* v = find(key);
  if (!v) return fallback;
  std::size_t pos = 0;
  const double x = std::stod(*v, &pos);
  if (pos != v->size())
    throw std::runtime_error("config: key '" + key + "' is not a number: " + *v);
  return x;
}

long KeyValueConfig::get_long(const std::string& key, long fallback) {
  const std::string* v = find(key);
  if (!v) return fallback;
  std::size_t pos = 0;
  const long x = std::stol(*v, &pos);
  if (pos != v->size())
    throw std::runtime_error("config: key '" + key + "' is not an integer: " + *v);
  return x;
}

int KeyValueConfig::get_int(const std::string& key, int fallback) {
  return static_cast<int>(get_long(key, fallback));
}

bool KeyValueConfig::get_bool(const std::string& key, bool fallback) {
  const std::string* v = find(key);
  if (!v) return fallback;
  if (*v == "true" || *v == "1" || *v == "yes") return true;
  if (*v == "false" || *v == "0" || *v == "no") return false;
  throw std::runtime_error("config: key '" + key + "' is not a boolean: " + *v);
}

std::vector<int> KeyValueConfig::get_int_list(const std::string& key,
                                              std::vector<int> fallback) {
  const std::string* v = find(key);
  if (!v) return fallback;
  std::vector<int> out;
  std::istringstream in(*v);
  std::string item;
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    out.push_back(std::stoi(item));
  }
  if (out.empty())
    throw std::runtime_error("config: key '" + key + "' is an empty list");
  return out;
}

void KeyValueConfig::finish() const {
  for (const auto& [k, v] : entries_)
    if (!consumed_.count(k)) throw std::runtime_error("config: unknown key '" + k + "'");
}

}  // namespace vlb
