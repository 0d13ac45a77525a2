// Reading and writing graphs and matrices.
//
// Text graph format, one declaration per line ('#' starts a comment):
//   vertex <name>
//   edge <name> <src> -> <dst>
// JSON graph format:
//   {"vertices": ["a", ...], "edges": [{"name": "e", "src": "a", "dst": "b"}, ...]}
// Matrix format: first line is the dimension n, followed by n rows of n
// whitespace-separated nonnegative integers.
#pragma once

#include <string>

#include "meteor/graph.hpp"

namespace meteor {

/// Thrown on malformed input; carries a 1-based line number when known.
class parse_error : public std::runtime_error {
 public:
  parse_error(const std::string& message, int line = 0)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message
                                    : message),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

/// Parses the text graph format. Vertex ids are assigned 0, 1, ... in
/// declaration order; names become labels.
Graph parse_graph_text(const std::string& text);

std::string graph_to_text(const Graph& g);

/// Parses the JSON graph format (same id/label conventions as the text form).
Graph parse_graph_json(const std::string& text);

std::string graph_to_json(const Graph& g);

/// Reads a graph file, sniffing JSON (first non-space byte '{') vs text.
Graph parse_graph_auto(const std::string& text);

IntMatrix parse_matrix(const std::string& text);

std::string matrix_to_string(const IntMatrix& m);

/// Loads a whole file into a string; throws parse_error when unreadable.
std::string read_file(const std::string& path);

void write_file(const std::string& path, const std::string& content);

/// FNV-1a 64-bit digest of a byte string, as fixed-width hex.
std::string content_digest(const std::string& content);

}  // namespace meteor
