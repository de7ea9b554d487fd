#pragma once

#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>

namespace graspkit {

/// Flat `key value` / `key = value` text file. '#' starts a comment.
class KeyValueFile {
 public:
  KeyValueFile() = default;

  static KeyValueFile parse(std::istream& in) {
    KeyValueFile kv;
    std::string line;
    while (std::getline(in, line)) {
      const auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      std::istringstream ls(line);
      std::string key;
      if (!(ls >> key)) continue;
      std::string rest;
      std::getline(ls, rest);
      auto start = rest.find_first_not_of(" \t=");
      auto end = rest.find_last_not_of(" \t\r");
      if (start == std::string::npos) {
        kv.values_[key] = "";
      } else {
        kv.values_[key] = rest.substr(start, end - start + 1);
      }
    }
    return kv;
  }

  static KeyValueFile load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return parse(in);
  }

  bool has(const std::string& key) const { return values_.count(key) > 0; }

  double get_double(const std::string& key) const {
    return std::stod(raw(key));
  }
  double get_double(const std::string& key, double fallback) const {
    return has(key) ? get_double(key) : fallback;
  }
  int get_int(const std::string& key) const { return std::stoi(raw(key)); }
  int get_int(const std::string& key, int fallback) const {
    return has(key) ? get_int(key) : fallback;
  }
  bool get_bool(const std::string& key, bool fallback) const {
    if (!has(key)) return fallback;
    const std::string& v = raw(key);
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw std::runtime_error("bad boolean for key " + key + ": " + v);
  }
  std::string get_string(const std::string& key, const std::string& fallback) const {
    return has(key) ? raw(key) : fallback;
  }

  const std::string& raw(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end()) throw std::runtime_error("missing key: " + key);
    return it->second;
  }

  const std::map<std::string, std::string>& values() const { return values_; }

 private:
  std::map<std::string, std::string> values_;
};

}  // namespace graspkit
