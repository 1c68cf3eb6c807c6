#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "curate/document.hpp"

namespace curate {

// Flat key = value text, one pair per line, '#' comments. Keys mirror the
// PipelineConfig field names; later assignments win.
std::map<std::string, std::string> parse_config_text(std::istream& in);
std::map<std::string, std::string> parse_config_file(const std::string& path);

// Applies key/value overrides onto a config. The `profile` key is applied
// first (it rebases num_perms and jaccard_threshold defaults); explicit keys
// always win over profile defaults. Throws config_error on unknown keys or
// unparsable values.
PipelineConfig apply_config_overrides(PipelineConfig base,
                                      const std::map<std::string, std::string>& keys);

// File keys, then CLI keys on top, then invariant validation.
// Throws config_error listing every violation.
PipelineConfig build_config(const std::map<std::string, std::string>& file_keys,
                            const std::map<std::string, std::string>& cli_keys);

} // namespace curate
