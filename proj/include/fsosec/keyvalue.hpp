/*
   Copyright 2026 The fsosec Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace fsosec {

struct KvEntry {
    std::string key;
    std::string value;
    int line = 0;
};

/// `[kind name]` block and the entries below it.
struct KvSection {
    std::string kind;
    std::string name;
    int line = 0;
    std::vector<KvEntry> entries;
};

struct KvDocument {
    std::vector<KvEntry> root;
    std::vector<KvSection> sections;
};

/// Line-oriented `key = value` documents. `#` starts a comment, blank lines
/// are ignored, and a duplicate key within one block is a ParseError.
KvDocument parse_key_values(std::string_view text);

std::string read_text_file(const std::filesystem::path& path);

std::string trim(std::string_view s);

} // namespace fsosec
