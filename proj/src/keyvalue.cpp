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

#include "fsosec/keyvalue.hpp"

#include "fsosec/errors.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace fsosec {

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(first, last - first + 1));
}

KvDocument parse_key_values(std::string_view text) {
    KvDocument doc;
    std::vector<KvEntry>* block = &doc.root;
    std::set<std::string> seen;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto end = text.find('\n', pos);
        const std::string_view raw =
            text.substr(pos, end == std::string_view::npos ? std::string_view::npos : end - pos);
        pos = (end == std::string_view::npos) ? text.size() + 1 : end + 1;
        ++line_no;

        std::string line = trim(raw.substr(0, raw.find('#')));
        if (line.empty()) {
            continue;
        }
        if (line.front() == '[') {
            if (line.back() != ']') {
                throw ParseError("line " + std::to_string(line_no) + ": unterminated section header", line_no);
            }
            std::istringstream header(line.substr(1, line.size() - 2));
            KvSection section;
            section.line = line_no;
            header >> section.kind >> section.name;
            std::string extra;
            if (section.kind.empty() || section.name.empty() || (header >> extra)) {
                throw ParseError("line " + std::to_string(line_no) + ": section header must be [kind name]",
                                 line_no);
            }
            doc.sections.push_back(std::move(section));
            block = &doc.sections.back().entries;
            seen.clear();
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ParseError("line " + std::to_string(line_no) + ": expected key = value", line_no);
        }
        KvEntry entry{trim(std::string_view(line).substr(0, eq)), trim(std::string_view(line).substr(eq + 1)),
                      line_no};
        if (entry.key.empty()) {
            throw ParseError("line " + std::to_string(line_no) + ": empty key", line_no);
        }
        if (!seen.insert(entry.key).second) {
            throw ParseError("line " + std::to_string(line_no) + ": duplicate key '" + entry.key + "'", line_no);
        }
        block->push_back(std::move(entry));
    }
    return doc;
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw MissingInput("cannot open '" + path.string() + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) {
        throw MissingInput("error reading '" + path.string() + "'");
    }
    return buf.str();
}

} // namespace fsosec
