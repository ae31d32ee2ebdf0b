#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace gg::test {

inline std::string corpusPath(const std::string &name) {
    return std::string(GG_CORPUS_DIR) + "/" + name;
}

inline std::string readCorpus(const std::string &name) {
    std::ifstream in(corpusPath(name));
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline std::vector<std::string> corpusFiles() {
    std::vector<std::string> out;
    for (const auto &entry : std::filesystem::directory_iterator(GG_CORPUS_DIR)) {
        if (entry.path().extension() == ".gg") {
            out.push_back(entry.path().filename().string());
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace gg::test
