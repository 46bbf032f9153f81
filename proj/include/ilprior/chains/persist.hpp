#pragma once

#include <filesystem>
#include <iosfwd>

#include "ilprior/chains/chains.hpp"

namespace ilprior {

/// JSON Lines: a header line, then per chain a "chain" line followed by its
/// "record" lines. Doubles are written in shortest round-trip form, so
/// load(save(x)) == x.
void save_chain_set(std::ostream& out, const ChainSet& chains);
void save_chain_set(const std::filesystem::path& path, const ChainSet& chains);

/// Throws LoadError citing the 1-based line of the first malformed line.
ChainSet load_chain_set(std::istream& in);
ChainSet load_chain_set(const std::filesystem::path& path);

}  // namespace ilprior
