#pragma once

#include <iosfwd>
#include <string>

#include "supwave/field.hpp"

namespace supwave {

// Binary field snapshot: magic "SPWV1", u32 dim, u32 cutoff, u64 count,
// then little-endian f64 payload: mean, then (b_n, c_n) for every canonical
// index of the box in lexicographic order (count pairs).
void write_snapshot(const FourierField& f, std::ostream& os);
void write_snapshot(const FourierField& f, const std::string& path);
FourierField read_snapshot(std::istream& is);
FourierField read_snapshot(const std::string& path);

// Lossless text form, one line per index, for debugging.
void write_snapshot_text(const FourierField& f, std::ostream& os);
FourierField read_snapshot_text(std::istream& is);

}  // namespace supwave
