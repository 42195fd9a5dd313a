#pragma once

// The on-disk vector format, plain ASCII and diff-able:
//   line 1: "sparseconv 1"
//   line 2: "n <length>"
//   then one "<index> <value>" line per entry, sorted by strictly
//   increasing index, LF line endings, no trailing whitespace.

#include <fstream>
#include <sstream>
#include <string>

#include "sparseconv/errors.hpp"
#include "sparseconv/vec.hpp"

namespace sparseconv {

inline std::string write_vector_string(const SparseVec& v) {
    std::string out = "sparseconv 1\n";
    out += "n " + std::to_string(v.length()) + "\n";
    for (const auto& e : v.entries()) {
        out += std::to_string(e.index);
        out += ' ';
        out += e.value.to_string();
        out += '\n';
    }
    return out;
}

inline void write_vector_file(const std::string& path, const SparseVec& v) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw parse_error("cannot open for writing: " + path);
    const std::string body = write_vector_string(v);
    f.write(body.data(), std::streamsize(body.size()));
    if (!f) throw parse_error("short write: " + path);
}

inline SparseVec read_vector_string(const std::string& text, const std::string& origin = "<string>") {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != "sparseconv 1")
        throw parse_error(origin + ": bad header (expected \"sparseconv 1\")");
    if (!std::getline(in, line) || line.rfind("n ", 0) != 0)
        throw parse_error(origin + ": bad length line (expected \"n <decimal>\")");
    Index n = 0;
    try {
        const Int parsed = Int::from_string(line.substr(2));
        if (parsed.is_negative() || !parsed.fits_u64()) throw parse_error("range");
        n = parsed.as_u64();
    } catch (const std::exception&) {
        throw parse_error(origin + ": unparseable length");
    }
    std::vector<Entry> entries;
    Index prev_set = 0;
    bool have_prev = false;
    std::size_t line_no = 2;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) throw parse_error(origin + ": blank record line " + std::to_string(line_no));
        const std::size_t sp = line.find(' ');
        if (sp == std::string::npos || sp == 0 || sp + 1 >= line.size() ||
            line.find(' ', sp + 1) != std::string::npos)
            throw parse_error(origin + ": malformed record at line " + std::to_string(line_no));
        Index idx = 0;
        Int value;
        try {
            const Int pidx = Int::from_string(line.substr(0, sp));
            if (pidx.is_negative() || !pidx.fits_u64()) throw parse_error("range");
            idx = pidx.as_u64();
            value = Int::from_string(line.substr(sp + 1));
        } catch (const std::exception&) {
            throw parse_error(origin + ": unparseable record at line " + std::to_string(line_no));
        }
        if (idx >= n) throw parse_error(origin + ": index beyond declared length at line " +
                                        std::to_string(line_no));
        if (have_prev && idx <= prev_set)
            throw parse_error(origin + ": indices not strictly increasing at line " +
                              std::to_string(line_no));
        if (value.is_zero())
            throw parse_error(origin + ": zero value at line " + std::to_string(line_no));
        entries.push_back({idx, std::move(value)});
        prev_set = idx;
        have_prev = true;
    }
    return SparseVec::from_sorted(n, std::move(entries));
}

inline SparseVec read_vector_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw parse_error("cannot open: " + path);
    std::ostringstream buf;
    buf << f.rdbuf();
    return read_vector_string(buf.str(), path);
}

}  // namespace sparseconv
