#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "aucboot/dataset.hpp"

namespace aucboot {

/// Reads the dataset interchange format: a header row, then one case per
/// line with the class label (1 or 2) followed by the feature values.
/// Parse failures report the offending line number.
inline LabeledDataset load_dataset_csv(const std::filesystem::path& path) {
    std::ifstream f(path);
    if (!f) throw std::invalid_argument("cannot open dataset file: " + path.string());

    auto fail = [&path](std::size_t line_no, const std::string& what) -> std::runtime_error {
        return std::runtime_error(path.string() + ":" + std::to_string(line_no) + ": " + what);
    };

    std::string line;
    std::size_t line_no = 0;
    if (!std::getline(f, line)) throw fail(1, "missing header row");
    ++line_no;

    LabeledDataset data;
    std::vector<double> features;
    while (std::getline(f, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        std::istringstream cells(line);
        std::string cell;
        if (!std::getline(cells, cell, ',')) throw fail(line_no, "empty row");
        ClassLabel label{};
        if (cell == "1")
            label = ClassLabel::one;
        else if (cell == "2")
            label = ClassLabel::two;
        else
            throw fail(line_no, "label must be 1 or 2, got: " + cell);
        features.clear();
        while (std::getline(cells, cell, ',')) {
            try {
                std::size_t pos = 0;
                features.push_back(std::stod(cell, &pos));
                if (pos != cell.size()) throw std::invalid_argument("");
            } catch (...) {
                throw fail(line_no, "bad feature value: " + cell);
            }
        }
        if (features.empty()) throw fail(line_no, "row has no feature columns");
        try {
            data.append(features, label);
        } catch (const std::invalid_argument&) {
            throw fail(line_no, "row width differs from earlier rows");
        }
    }
    if (data.size() == 0) throw fail(line_no, "dataset has no cases");
    if (data.n1() == 0 || data.n2() == 0)
        throw std::runtime_error(path.string() + ": both classes must be present");
    return data;
}

}  // namespace aucboot
