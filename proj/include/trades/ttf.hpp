#ifndef TRADES_TTF_HPP
#define TRADES_TTF_HPP

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "trades/core.hpp"

namespace trades {

// Trade text format:
//   line 1:  "trade t=<t> k=<k>"
//   one block per line, k ascending decimal labels, blocks sorted
//   lexicographically, multiplicity m as m consecutive lines;
//   "---" separator; then the second side in the same convention.
// Lines starting with '#' are skipped on read. LF line endings only.

struct TtfError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void write_ttf(std::ostream& os, const Trade& tr);
std::string to_ttf(const Trade& tr);

// Throws TtfError on malformed input (mismatched k, unsorted block line,
// missing separator, bad header).
CandidatePair read_ttf(std::istream& is);
CandidatePair read_ttf_file(const std::string& path);
void write_ttf_file(const std::string& path, const Trade& tr);

}  // namespace trades

#endif
