#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace resmat::detail {

struct DataLine {
    std::string text;
    int number; // 1-based line number in the original input
};

// Splits input into lines, dropping blank lines and '#' comment lines.
inline std::vector<DataLine> data_lines(std::string_view input) {
    std::vector<DataLine> out;
    int number = 0;
    std::size_t pos = 0;
    while (pos <= input.size()) {
        std::size_t nl = input.find('\n', pos);
        std::string_view line = input.substr(
            pos, nl == std::string_view::npos ? input.size() - pos : nl - pos);
        ++number;
        std::size_t begin = line.find_first_not_of(" \t\r");
        if (begin != std::string_view::npos && line[begin] != '#') {
            std::size_t end = line.find_last_not_of(" \t\r");
            out.push_back({std::string(line.substr(begin, end - begin + 1)), number});
        }
        if (nl == std::string_view::npos) break;
        pos = nl + 1;
    }
    return out;
}

} // namespace resmat::detail
