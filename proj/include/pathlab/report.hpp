#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pathlab/types.hpp"

namespace pathlab::report {

// Doubles are serialized with 17 significant digits so every report value
// round-trips bit-exactly through text.
std::string fmt(double v);

// CSV bodies (header included, '\n' line endings, no trailing blank line
// beyond the final newline).
std::string path_csv(const SamplePath& path);              // t,value
std::string field_csv(const SampleField& field);           // t1,t2,value
std::string table_csv(std::span<const std::string> header,
                      std::span<const std::vector<std::string>> rows);

// Flat key-value record, one `key=value` per line, keys in given order.
std::string key_value_record(
    std::span<const std::pair<std::string, std::string>> entries);

SamplePath parse_path_csv(const std::string& body);

void write_text_file(const std::string& file_path, const std::string& content);
std::string read_text_file(const std::string& file_path);
SamplePath read_path_csv(const std::string& file_path);

}  // namespace pathlab::report
