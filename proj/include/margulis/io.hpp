#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "margulis/isospectrality.hpp"

namespace margulis {

struct GroupFileMeta {
  std::uint64_t seed = 0;
  std::string description;
};

/// On-disk group description: schema version, generators (9 row-major linear
/// entries plus 3 translation entries each), optional finite orders, metadata.
struct GroupFile {
  int schema_version = 1;
  Presentation group;
  GroupFileMeta metadata;
};

/// 17-significant-digit decimal rendering; round-trips doubles exactly.
std::string format_real(Real x);

std::string group_file_to_json(const GroupFile& gf);
GroupFile group_file_from_json(const std::string& text,
                               const Config& cfg = default_config());

GroupFile load_group_file(const std::string& path,
                          const Config& cfg = default_config());
void save_group_file(const std::string& path, const GroupFile& gf);

/// One row per word: word string, alpha to 17 significant digits, skip flag.
void write_spectrum_table(std::ostream& os, const Spectrum& s);
void write_spectrum_json(std::ostream& os, const Spectrum& s);

void write_certificate_text(std::ostream& os, const ConjugacyCertificate& c);
void write_certificate_json(std::ostream& os, const ConjugacyCertificate& c);

void write_convergence_table(std::ostream& os,
                             const std::vector<std::pair<int, Real>>& rows);

}  // namespace margulis
