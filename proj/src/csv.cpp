#include "roadfield/csv.hpp"

#include <cstdio>
#include <fstream>

#include "roadfield/errors.hpp"

namespace roadfield::csv {

std::string fmt(double value) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

std::string row(std::initializer_list<std::string_view> cells) {
    std::string out;
    bool first = true;
    for (auto c : cells) {
        if (!first) out += ',';
        out += c;
        first = false;
    }
    return out;
}

std::string row(const std::vector<std::string>& cells) {
    std::string out;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out += ',';
        out += cells[i];
    }
    return out;
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot open " + tmp.string() + " for writing");
        out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
        if (!out) throw Error("failed writing " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace roadfield::csv
