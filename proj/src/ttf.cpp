#include "trades/ttf.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace trades {

namespace {

void write_side(std::ostream& os, const Side& side) {
  for (const Block& b : side.expanded()) {
    for (std::size_t i = 0; i < b.size(); ++i) {
      if (i) os << ' ';
      os << b[i];
    }
    os << '\n';
  }
}

}  // namespace

void write_ttf(std::ostream& os, const Trade& tr) {
  os << "trade t=" << tr.strength() << " k=" << tr.block_size() << '\n';
  write_side(os, tr.first());
  os << "---\n";
  write_side(os, tr.second());
}

std::string to_ttf(const Trade& tr) {
  std::ostringstream os;
  write_ttf(os, tr);
  return os.str();
}

CandidatePair read_ttf(std::istream& is) {
  std::string line;
  // Header (comments allowed before it).
  int t = -1, k = -1;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r')
      throw TtfError("CR line ending; TTF requires LF only");
    if (!line.empty() && line[0] == '#') continue;
    if (line.empty()) continue;
    if (std::sscanf(line.c_str(), "trade t=%d k=%d", &t, &k) != 2 || t < 1 || k < 1)
      throw TtfError("bad header line: " + line);
    break;
  }
  if (t < 0) throw TtfError("missing header");

  std::vector<Block> first, second;
  std::vector<Block>* cur = &first;
  bool saw_sep = false;
  const Block* prev = nullptr;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r')
      throw TtfError("CR line ending; TTF requires LF only");
    if (!line.empty() && line[0] == '#') continue;
    if (line.empty()) continue;
    if (line == "---") {
      if (saw_sep) throw TtfError("duplicate separator");
      saw_sep = true;
      cur = &second;
      prev = nullptr;
      continue;
    }
    std::istringstream ls(line);
    Block b;
    long v;
    while (ls >> v) {
      if (v < 0) throw TtfError("negative label: " + line);
      b.push_back(static_cast<Label>(v));
    }
    if (!ls.eof()) throw TtfError("bad block line: " + line);
    if (static_cast<int>(b.size()) != k)
      throw TtfError("block line has " + std::to_string(b.size()) +
                     " labels, expected k=" + std::to_string(k));
    if (!is_valid_block(b)) throw TtfError("unsorted or repeated label: " + line);
    if (prev && b < *prev) throw TtfError("blocks out of lexicographic order");
    cur->push_back(b);
    prev = &cur->back();
  }
  if (!saw_sep) throw TtfError("missing --- separator");
  return CandidatePair{t, Side::from_blocks(first), Side::from_blocks(second)};
}

CandidatePair read_ttf_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw TtfError("cannot open " + path);
  return read_ttf(f);
}

void write_ttf_file(const std::string& path, const Trade& tr) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw TtfError("cannot open " + path + " for writing");
  write_ttf(f, tr);
}

}  // namespace trades
