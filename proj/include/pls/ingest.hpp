#ifndef PLS_INGEST_HPP
#define PLS_INGEST_HPP

#include "pls/model.hpp"

#include <optional>
#include <string>
#include <vector>

namespace pls::ingest {

struct RawTable {
  std::vector<std::string> header;
  Matrix features;  // all non-response columns, header order
  Vector response;
  std::string response_column;
  int dropped_rows = 0;  // rows with unparseable or missing cells
};

class MissingFile : public Error {
 public:
  using Error::Error;
};
class MissingColumn : public Error {
 public:
  using Error::Error;
};
class EmptyTable : public Error {
 public:
  using Error::Error;
};
class DegenerateColumn : public Error {
 public:
  using Error::Error;
};

/// Loads a comma-separated file with a header row. Rows with the wrong width
/// or unparseable cells are dropped and counted.
RawTable load_csv(const std::string& path, const std::string& response_column);

/// Filters rows whose response is at or above the threshold (the cap value is
/// assigned to censored rows, so equality is censored too), then centers all
/// columns and the response, then scales each feature column to unit sample
/// variance. Filtering happens before centering.
model::Dataset preprocess(const RawTable& table,
                          std::optional<double> drop_response_at_or_above = std::nullopt);

}  // namespace pls::ingest

#endif  // PLS_INGEST_HPP
