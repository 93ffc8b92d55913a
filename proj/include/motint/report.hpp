#pragma once

#include "motint/model_file.hpp"

#include <json.hpp>

namespace motint {

struct ReportOptions {
  bool json = false;
  long prec = 10;
  std::vector<Rational> qs; // evaluation points; commands pick defaults when empty
};

/// Text and JSON forms of one command's output. `ok` is false when a check
/// in the report failed (exit status 1).
struct Report {
  std::string text;
  nlohmann::ordered_json json;
  bool ok = true;

  const std::string& render(const ReportOptions& o);

private:
  std::string rendered_;
};

Report ring_eval_report(const std::string& expr, const ReportOptions& o);
Report ring_order_report(const std::string& lhs, const std::string& rhs, const ReportOptions& o);
Report ring_expand_report(const std::string& expr, const ReportOptions& o);
/// prefix "5,5,4", tail "constant:4".
Report seq_classify_report(const std::string& prefix, const std::string& tail, const ReportOptions& o);

Report model_check_report(const ModelFile& m, const ReportOptions& o);
/// add f g | mul f g | graph f | arc obj f | restrict f U | permissible f |
/// glue U1,U2 f1,f2 | groth-eq f1 g1 f2 g2
Report fn_op_report(const ModelFile& m, const std::vector<std::string>& args, const ReportOptions& o);
/// Throws Error(NotSummable) when the total diverges.
Report integrate_report(const ModelFile& m, const std::string& total, const ReportOptions& o);
/// model-check followed by every total; divergent totals are listed, not thrown.
Report full_report(const ModelFile& m, const ReportOptions& o);

} // namespace motint
