#pragma once

#include <string>

#include <json.hpp>

#include "beurling/asymptotics.hpp"
#include "beurling/prime_dist.hpp"
#include "beurling/zeta.hpp"

namespace beurling {

using Json = nlohmann::ordered_json;

// CSV columns: t,re,im,modulus,error_bound
void write_scan_csv(std::ostream& out, const BoundaryScan& scan);

// {n, sigma, beta_hat, residual, grid:{tmin,tmax,count}}
Json scan_summary_json(const BoundaryScan& scan);

// CSV columns: x,raw,normalized
void write_profile_csv(std::ostream& out, const RemainderProfile& prof);

// {target, n, m, sup, slope, verdict}
Json profile_summary_json(const RemainderProfile& prof);

// CSV columns: x,pi,Pi,gap,bound
void write_gap_report_csv(std::ostream& out, const GapCheckReport& rep);

Json system_meta_json(const GeneralizedNumberSystem& sys);

void write_text_file(const std::string& path, const std::string& contents);
std::string read_text_file(const std::string& path);

}  // namespace beurling
