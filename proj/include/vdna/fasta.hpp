#pragma once

#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "vdna/error.hpp"
#include "vdna/oligo.hpp"

// FASTA container for oligo pools. Output is canonical (one sequence line
// per record, LF endings); input is read liberally: multi-line sequences,
// blank lines, CRLF and lowercase are all accepted. Descriptions are
// informational only; the decoder never relies on record order.

namespace vdna {

struct FastaRecord {
    std::string description;
    std::string sequence;
};

inline void write_fasta(const std::vector<Oligo>& oligos, std::ostream& out) {
    for (std::size_t i = 0; i < oligos.size(); ++i) {
        out << ">oligo_" << i << '\n' << oligos[i].sequence << '\n';
    }
    if (!out) throw IoError("failed to write FASTA stream");
}

inline std::string to_fasta_string(const std::vector<Oligo>& oligos) {
    std::ostringstream out;
    write_fasta(oligos, out);
    return out.str();
}

inline void write_fasta_file(const std::vector<Oligo>& oligos, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    write_fasta(oligos, out);
}

inline std::vector<FastaRecord> read_fasta(std::istream& in) {
    std::vector<FastaRecord> records;
    std::string line;
    std::size_t line_no = 0;
    std::size_t record_line = 0;
    bool in_record = false;

    auto flush_record = [&](const FastaRecord& rec) {
        if (rec.sequence.empty()) {
            throw FastaParseError(record_line, "record '" + rec.description +
                                                   "' has an empty sequence");
        }
    };

    FastaRecord current;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '>') {
            if (in_record) {
                flush_record(current);
                records.push_back(std::move(current));
            }
            current = FastaRecord{line.substr(1), ""};
            record_line = line_no;
            in_record = true;
            continue;
        }
        if (!in_record) {
            throw FastaParseError(line_no, "expected '>' record start");
        }
        for (char ch : line) {
            const char up = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
            if (!is_nucleotide(up)) {
                throw FastaParseError(line_no, "invalid sequence character '" +
                                                   std::string(1, ch) + "'");
            }
            current.sequence.push_back(up);
        }
    }
    if (in_record) {
        flush_record(current);
        records.push_back(std::move(current));
    }
    if (records.empty()) {
        throw FastaParseError(1, "no FASTA records found");
    }
    return records;
}

inline std::vector<FastaRecord> read_fasta_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    return read_fasta(in);
}

inline std::vector<Oligo> records_to_oligos(std::vector<FastaRecord> records) {
    std::vector<Oligo> oligos;
    oligos.reserve(records.size());
    for (FastaRecord& rec : records) oligos.push_back({std::move(rec.sequence), false});
    return oligos;
}

}  // namespace vdna
