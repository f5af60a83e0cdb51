#include "badgoods/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <istream>
#include <map>
#include <sstream>

namespace badgoods {

namespace {

std::string trim(const std::string& text) {
    std::size_t begin = 0;
    std::size_t end = text.size();
    while (begin < end && std::isspace(static_cast<unsigned char>(text[begin]))) {
        ++begin;
    }
    while (end > begin && std::isspace(static_cast<unsigned char>(text[end - 1]))) {
        --end;
    }
    return text.substr(begin, end - begin);
}

std::string lower(std::string text) {
    for (char& c : text) {
        c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
    return text;
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::string current;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(trim(current));
            current.clear();
        } else {
            current.push_back(c);
        }
    }
    fields.push_back(trim(current));
    return fields;
}

[[noreturn]] void bad_cell(std::size_t line_no, const std::string& column,
                           const std::string& reason) {
    fail(Errc::BadCell,
         "line " + std::to_string(line_no) + ", column \"" + column + "\": " + reason);
}

long long parse_integer_cell(const std::string& cell, std::size_t line_no,
                             const std::string& column) {
    if (cell.empty()) {
        bad_cell(line_no, column, "empty cell");
    }
    long long value = 0;
    auto first = cell.data();
    auto last = cell.data() + cell.size();
    auto result = std::from_chars(first, last, value);
    if (result.ec != std::errc() || result.ptr != last) {
        bad_cell(line_no, column, "not an integer: \"" + cell + "\"");
    }
    return value;
}

double parse_real_cell(const std::string& cell, std::size_t line_no, const std::string& column) {
    if (cell.empty()) {
        bad_cell(line_no, column, "empty cell");
    }
    double value = 0.0;
    auto first = cell.data();
    auto last = cell.data() + cell.size();
    auto result = std::from_chars(first, last, value);
    if (result.ec != std::errc() || result.ptr != last || !std::isfinite(value)) {
        bad_cell(line_no, column, "not a number: \"" + cell + "\"");
    }
    return value;
}

YearMonth parse_date_cell(const std::string& cell, std::size_t line_no) {
    auto parsed = YearMonth::try_parse(cell);
    if (!parsed) {
        bad_cell(line_no, "date", "not a YYYY-MM or YYYY-MM-DD date: \"" + cell + "\"");
    }
    return *parsed;
}

// Reads non-blank lines, strips a trailing '\r', returns (line_no, fields).
std::vector<std::pair<std::size_t, std::vector<std::string>>> read_rows(std::istream& in) {
    std::vector<std::pair<std::size_t, std::vector<std::string>>> rows;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (trim(line).empty()) {
            continue;
        }
        rows.emplace_back(line_no, split_fields(line));
    }
    return rows;
}

// Maps canonical column name -> index, matching case-insensitively.
std::map<std::string, std::size_t> index_header(const std::vector<std::string>& header,
                                                const std::vector<std::string>& required) {
    std::map<std::string, std::size_t> indices;
    for (std::size_t i = 0; i < header.size(); ++i) {
        indices.emplace(lower(header[i]), i);
    }
    for (const auto& name : required) {
        if (indices.find(name) == indices.end()) {
            fail(Errc::MissingColumn, "header lacks required column \"" + name + "\"");
        }
    }
    return indices;
}

const std::string& cell_at(const std::vector<std::string>& fields, std::size_t index,
                           std::size_t line_no) {
    if (index >= fields.size()) {
        fail(Errc::BadCell, "line " + std::to_string(line_no) + ": too few fields");
    }
    return fields[index];
}

void check_record(const MonthlyRecord& r) {
    const std::string where = r.month.to_string();
    if (r.return_qty > r.bought_qty) {
        fail(Errc::InvariantViolation,
             where + ": return_qty " + std::to_string(r.return_qty) +
                 " exceeds bought_qty " + std::to_string(r.bought_qty));
    }
    if (r.freshness_in_months > r.shelf_life_in_months) {
        fail(Errc::InvariantViolation,
             where + ": freshness " + std::to_string(r.freshness_in_months) +
                 " exceeds shelf life " + std::to_string(r.shelf_life_in_months));
    }
}

Units interpolate_units(Units before, Units after, int step, int span) {
    double t = static_cast<double>(step) / static_cast<double>(span);
    double value = static_cast<double>(before) +
                   (static_cast<double>(after) - static_cast<double>(before)) * t;
    return static_cast<Units>(std::llround(value));
}

} // namespace

const char* to_string(HistoryField field) noexcept {
    switch (field) {
    case HistoryField::BoughtQty: return "bought_qty";
    case HistoryField::ReturnQty: return "return_qty";
    case HistoryField::RetailerCapacity: return "retailer_capacity";
    case HistoryField::RateOfReturn: return "rate_of_return";
    }
    return "?";
}

Dataset parse_history_csv(std::istream& in, const std::string& product_label) {
    auto rows = read_rows(in);
    if (rows.empty()) {
        fail(Errc::EmptyFile, "no rows in history input");
    }
    static const std::vector<std::string> kRequired = {
        "date",       "bought_qty",         "return_qty",
        "retailer_capacity", "freshness_in_months", "shelf_life_in_months"};
    auto columns = index_header(rows.front().second, kRequired);

    Dataset dataset;
    dataset.product_label = product_label;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto& [line_no, fields] = rows[i];
        MonthlyRecord record;
        record.month = parse_date_cell(cell_at(fields, columns.at("date"), line_no), line_no);

        record.bought_qty = parse_integer_cell(
            cell_at(fields, columns.at("bought_qty"), line_no), line_no, "bought_qty");
        if (record.bought_qty < 0) {
            bad_cell(line_no, "bought_qty", "must be non-negative");
        }
        record.return_qty = parse_integer_cell(
            cell_at(fields, columns.at("return_qty"), line_no), line_no, "return_qty");
        if (record.return_qty < 0) {
            bad_cell(line_no, "return_qty", "must be non-negative");
        }
        record.retailer_capacity =
            parse_integer_cell(cell_at(fields, columns.at("retailer_capacity"), line_no),
                               line_no, "retailer_capacity");
        if (record.retailer_capacity < 1) {
            bad_cell(line_no, "retailer_capacity", "must be at least 1");
        }
        record.freshness_in_months = static_cast<int>(
            parse_integer_cell(cell_at(fields, columns.at("freshness_in_months"), line_no),
                               line_no, "freshness_in_months"));
        if (record.freshness_in_months < 0) {
            bad_cell(line_no, "freshness_in_months", "must be non-negative");
        }
        record.shelf_life_in_months = static_cast<int>(
            parse_integer_cell(cell_at(fields, columns.at("shelf_life_in_months"), line_no),
                               line_no, "shelf_life_in_months"));
        if (record.shelf_life_in_months < 1) {
            bad_cell(line_no, "shelf_life_in_months", "must be at least 1");
        }
        dataset.records.push_back(record);
    }
    if (dataset.records.empty()) {
        fail(Errc::EmptyFile, "history input has a header but no data rows");
    }

    std::stable_sort(dataset.records.begin(), dataset.records.end(),
                     [](const MonthlyRecord& a, const MonthlyRecord& b) {
                         return a.month < b.month;
                     });
    for (std::size_t i = 1; i < dataset.records.size(); ++i) {
        if (dataset.records[i].month == dataset.records[i - 1].month) {
            fail(Errc::DuplicateMonth,
                 "month " + dataset.records[i].month.to_string() + " appears more than once");
        }
    }
    return dataset;
}

std::string serialize_history_csv(const Dataset& dataset) {
    std::ostringstream out;
    out << "date,bought_qty,return_qty,retailer_capacity,freshness_in_months,"
           "shelf_life_in_months\n";
    for (const auto& r : dataset.records) {
        out << r.month.to_string() << ',' << r.bought_qty << ',' << r.return_qty << ','
            << r.retailer_capacity << ',' << r.freshness_in_months << ','
            << r.shelf_life_in_months << '\n';
    }
    return out.str();
}

Dataset validate(Dataset dataset, GapPolicy policy) {
    if (dataset.records.empty()) {
        fail(Errc::EmptyFile, "dataset has no records");
    }
    for (const auto& record : dataset.records) {
        check_record(record);
    }

    std::vector<MonthlyRecord> complete;
    complete.push_back(dataset.records.front());
    std::vector<std::string> missing;
    for (std::size_t i = 1; i < dataset.records.size(); ++i) {
        const MonthlyRecord& prev = dataset.records[i - 1];
        const MonthlyRecord& next = dataset.records[i];
        int span = next.month.months_since(prev.month);
        for (int step = 1; step < span; ++step) {
            YearMonth month = prev.month.plus_months(step);
            if (policy == GapPolicy::Reject) {
                missing.push_back(month.to_string());
                continue;
            }
            MonthlyRecord filled;
            filled.month = month;
            filled.bought_qty = interpolate_units(prev.bought_qty, next.bought_qty, step, span);
            filled.return_qty = interpolate_units(prev.return_qty, next.return_qty, step, span);
            filled.retailer_capacity =
                interpolate_units(prev.retailer_capacity, next.retailer_capacity, step, span);
            filled.freshness_in_months = prev.freshness_in_months;
            filled.shelf_life_in_months = prev.shelf_life_in_months;
            filled.synthetic = true;
            check_record(filled);
            complete.push_back(filled);
        }
        complete.push_back(next);
    }
    if (!missing.empty()) {
        std::string joined;
        for (std::size_t i = 0; i < missing.size(); ++i) {
            joined += (i ? ", " : "") + missing[i];
        }
        fail(Errc::GapFound, "missing months: " + joined);
    }
    dataset.records = std::move(complete);
    return dataset;
}

TimeSeries extract_series(const Dataset& dataset, HistoryField field) {
    if (dataset.records.empty()) {
        fail(Errc::EmptyFile, "dataset has no records");
    }
    TimeSeries series;
    series.start_month = dataset.records.front().month;
    series.field_name = to_string(field);
    series.values.reserve(dataset.records.size());
    for (const auto& r : dataset.records) {
        switch (field) {
        case HistoryField::BoughtQty:
            series.values.push_back(static_cast<double>(r.bought_qty));
            break;
        case HistoryField::ReturnQty:
            series.values.push_back(static_cast<double>(r.return_qty));
            break;
        case HistoryField::RetailerCapacity:
            series.values.push_back(static_cast<double>(r.retailer_capacity));
            break;
        case HistoryField::RateOfReturn:
            series.values.push_back(return_rate(r.return_qty, r.bought_qty).value());
            break;
        }
    }
    return series;
}

std::vector<PlanInput> parse_plan_csv(std::istream& in) {
    auto rows = read_rows(in);
    if (rows.empty()) {
        fail(Errc::EmptyFile, "no rows in plan input");
    }
    static const std::vector<std::string> kRequired = {
        "date", "demand_plan_qty", "freshness_in_months", "shelf_life_in_months"};
    auto columns = index_header(rows.front().second, kRequired);
    bool has_rate = columns.count("return_rate_pct") != 0;
    bool has_capacity = columns.count("retailer_capacity") != 0;

    std::vector<PlanInput> plan;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto& [line_no, fields] = rows[i];
        PlanInput row;
        row.month = parse_date_cell(cell_at(fields, columns.at("date"), line_no), line_no);
        row.demand_plan_qty = parse_integer_cell(
            cell_at(fields, columns.at("demand_plan_qty"), line_no), line_no, "demand_plan_qty");
        if (row.demand_plan_qty < 1) {
            bad_cell(line_no, "demand_plan_qty", "must be positive");
        }
        row.freshness_in_months = static_cast<int>(
            parse_integer_cell(cell_at(fields, columns.at("freshness_in_months"), line_no),
                               line_no, "freshness_in_months"));
        if (row.freshness_in_months < 0) {
            bad_cell(line_no, "freshness_in_months", "must be non-negative");
        }
        row.shelf_life_in_months = static_cast<int>(
            parse_integer_cell(cell_at(fields, columns.at("shelf_life_in_months"), line_no),
                               line_no, "shelf_life_in_months"));
        if (row.shelf_life_in_months < 1) {
            bad_cell(line_no, "shelf_life_in_months", "must be at least 1");
        }
        if (row.freshness_in_months > row.shelf_life_in_months) {
            fail(Errc::InvariantViolation,
                 row.month.to_string() + ": freshness " +
                     std::to_string(row.freshness_in_months) + " exceeds shelf life " +
                     std::to_string(row.shelf_life_in_months));
        }
        if (has_rate) {
            double pct = parse_real_cell(cell_at(fields, columns.at("return_rate_pct"), line_no),
                                         line_no, "return_rate_pct");
            if (pct < 0.0 || pct > 100.0) {
                bad_cell(line_no, "return_rate_pct", "must lie in [0, 100]");
            }
            row.return_rate = pct / 100.0;
        }
        if (has_capacity) {
            Units capacity =
                parse_integer_cell(cell_at(fields, columns.at("retailer_capacity"), line_no),
                                   line_no, "retailer_capacity");
            if (capacity < 1) {
                bad_cell(line_no, "retailer_capacity", "must be at least 1");
            }
            row.retailer_capacity = capacity;
        }
        plan.push_back(row);
    }
    if (plan.empty()) {
        fail(Errc::EmptyFile, "plan input has a header but no data rows");
    }
    std::stable_sort(plan.begin(), plan.end(),
                     [](const PlanInput& a, const PlanInput& b) { return a.month < b.month; });
    for (std::size_t i = 1; i < plan.size(); ++i) {
        if (plan[i].month == plan[i - 1].month) {
            fail(Errc::DuplicateMonth,
                 "month " + plan[i].month.to_string() + " appears more than once");
        }
    }
    return plan;
}

} // namespace badgoods
