#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "godelgen/signature.hpp"

inline std::string slurp(const std::string& name) {
  std::ifstream in(std::string(GODELGEN_SIGNATURE_DIR) + "/" + name);
  if (!in) throw std::runtime_error("missing signature file " + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline godelgen::SignaturePtr load(const std::string& name) { return godelgen::load_signature(slurp(name)); }
