// Command-line front end: generate, verify and optimize Fibonacci graph expressions.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <iterator>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <fibexpr.hpp>
#include <fibexpr/repro.hpp>

namespace
{

using json = nlohmann::ordered_json;
using namespace fibexpr;

constexpr int schema_version = 1;
constexpr std::size_t max_console_formula = 10'000;

enum class output_format
{
  text,
  json,
  csv
};

/// Usage problems detected after flag parsing; exit code 2.
struct usage_error : std::runtime_error
{
  using std::runtime_error::runtime_error;
};

struct run_config
{
  std::int64_t n = 0;
  std::int64_t n_min = 2;
  std::int64_t n_max = 0;
  std::string method_name = "middle";
  std::optional<std::int64_t> m;
  std::string tie_name = "low";
  std::optional<std::uint64_t> seed;
  std::vector<std::string> splits;
  std::optional<std::uint64_t> prime;
  std::uint64_t trials = 32;
  std::uint64_t trial_seed = 1;
  std::string mode = "expand";
  std::string metric_name = "both";
  bool all_intervals = false;
  std::string formula;
  std::string formula_file;
  std::vector<std::int64_t> n_list;
  output_format format = output_format::text;
  std::string out_path;
  bool timings = false;
};

tie tie_of( run_config const& cfg ) { return cfg.tie_name == "high" ? tie::high : tie::low; }

std::uint64_t prime_of( run_config const& cfg ) { return cfg.prime ? *cfg.prime : configured_prime(); }

fixed_map parse_splits( std::vector<std::string> const& specs, tie fallback )
{
  fixed_map result;
  result.fallback = fallback;
  for ( auto const& spec : specs )
  {
    std::int64_t p = 0, q = 0, i = 0;
    char c1 = 0, c2 = 0;
    std::istringstream in( spec );
    if ( !( in >> p >> c1 >> q >> c2 >> i ) || c1 != ':' || c2 != ':' || !in.eof() )
      throw usage_error( "--split expects P:Q:I, got '" + spec + "'" );
    result.choices[{ p, q }] = i;
  }
  return result;
}

/// Builds the method from the flags, rejecting flags that do not apply to it.
method method_of( run_config const& cfg )
{
  auto kind = parse_method_kind( cfg.method_name );
  if ( !kind )
    throw usage_error( "unknown method '" + cfg.method_name + "'" );
  if ( cfg.m && *kind != method_kind::gd )
    throw usage_error( "--m applies only to --method gd" );
  if ( cfg.seed && *kind != method_kind::seeded )
    throw usage_error( "--seed applies only to --method seeded" );
  if ( !cfg.splits.empty() && *kind != method_kind::fixed )
    throw usage_error( "--split applies only to --method fixed" );

  switch ( *kind )
  {
  case method_kind::canonical:
    return method::canonical();
  case method_kind::middle:
    return method::middle( tie_of( cfg ) );
  case method_kind::leftmost:
    return method::left();
  case method_kind::seeded:
    return method::with_seed( cfg.seed.value_or( 0 ) );
  case method_kind::fixed:
    return method::fixed( parse_splits( cfg.splits, tie_of( cfg ) ) );
  case method_kind::gd:
    if ( !cfg.m )
      throw usage_error( "--method gd requires --m" );
    if ( *cfg.m < 2 )
      throw usage_error( "--m must be at least 2" );
    return method::gd( *cfg.m, tie_of( cfg ) );
  }
  throw usage_error( "unknown method" );
}

void require_n( std::int64_t n, std::int64_t minimum, char const* flag )
{
  if ( n < minimum )
    throw usage_error( std::string( flag ) + " must be at least " + std::to_string( minimum ) );
}

/// Writes the report to --out when given, otherwise to stdout.
void emit( run_config const& cfg, std::string const& text )
{
  if ( cfg.out_path.empty() )
  {
    std::cout << text;
    return;
  }
  std::ofstream file( cfg.out_path, std::ios::binary );
  if ( !file )
    throw usage_error( "cannot write " + cfg.out_path );
  file << text;
}

std::string dump( json const& document ) { return document.dump( 2 ) + "\n"; }

std::string join( std::vector<vertex> const& values, char const* separator = "," )
{
  std::string text;
  for ( auto v : values )
    text += ( text.empty() ? "" : separator ) + std::to_string( v );
  return text;
}

int cmd_expr( run_config const& cfg )
{
  require_n( cfg.n, 1, "--n" );
  auto const how = method_of( cfg );
  auto const e = build_expression( cfg.n, how );
  auto const formula = format( e );
  auto const terms = metric_terms( e ), plus = metric_plus( e );

  // with --out the formula goes to the file and the summary to the console
  bool const to_file = !cfg.out_path.empty();
  if ( to_file )
  {
    std::ofstream file( cfg.out_path, std::ios::binary );
    if ( !file )
      throw usage_error( "cannot write " + cfg.out_path );
    file << formula << "\n";
  }
  bool const inline_formula = !to_file && formula.size() <= max_console_formula;

  std::string const method_name = to_string( how.kind );
  switch ( cfg.format )
  {
  case output_format::json:
  {
    json doc{ { "schema_version", schema_version }, { "n", cfg.n }, { "method", method_name } };
    doc["formula"] = inline_formula ? json( formula ) : json( nullptr );
    if ( !inline_formula )
      doc["formula_chars"] = formula.size();
    if ( to_file )
      doc["formula_file"] = cfg.out_path;
    doc["terms"] = terms;
    doc["plus"] = plus;
    std::cout << dump( doc );
    break;
  }
  case output_format::csv:
    std::cout << "n,method,terms,plus\n" << cfg.n << "," << method_name << "," << terms << "," << plus << "\n";
    break;
  case output_format::text:
    if ( inline_formula )
      std::cout << "formula: " << formula << "\n";
    else if ( to_file )
      std::cout << "formula: written to " << cfg.out_path << " (" << formula.size() << " characters)\n";
    else
      std::cout << "formula: omitted, " << formula.size() << " characters; use --out FILE\n";
    std::cout << "terms: " << terms << "\nplus: " << plus << "\n";
    break;
  }
  return 0;
}

int cmd_verify( run_config const& cfg )
{
  require_n( cfg.n, 1, "--n" );
  if ( !cfg.formula.empty() && !cfg.formula_file.empty() )
    throw usage_error( "--formula and --formula-file are exclusive" );

  expr e;
  std::string subject;
  if ( !cfg.formula.empty() || !cfg.formula_file.empty() )
  {
    std::string text = cfg.formula;
    if ( !cfg.formula_file.empty() )
    {
      std::ifstream file( cfg.formula_file, std::ios::binary );
      if ( !file )
        throw usage_error( "cannot read " + cfg.formula_file );
      text.assign( std::istreambuf_iterator<char>( file ), {} );
    }
    e = parse( text );
    subject = "formula";
  }
  else
  {
    auto const how = method_of( cfg );
    e = build_expression( cfg.n, how );
    subject = to_string( how.kind );
  }

  verdict v;
  if ( cfg.mode == "expand" )
    v = verify_expand( e, cfg.n );
  else
  {
    if ( cfg.trials < 1 )
      throw usage_error( "--trials must be at least 1" );
    v = verify_modeval( e, cfg.n, prime_of( cfg ), cfg.trials, cfg.trial_seed );
  }

  std::string report;
  switch ( cfg.format )
  {
  case output_format::json:
  {
    json doc{ { "schema_version", schema_version }, { "n", cfg.n },       { "subject", subject },
              { "mode", v.mode },                   { "equivalent", v.equivalent }, { "detail", v.detail } };
    if ( v.mode == "expand" )
      doc["monomials"] = v.monomials;
    else
    {
      doc["trials"] = v.trials;
      doc["failed_trials"] = v.failed_trials;
    }
    report = dump( doc );
    break;
  }
  case output_format::csv:
    report = "n,subject,mode,equivalent\n" + std::to_string( cfg.n ) + "," + subject + "," + v.mode + "," +
             ( v.equivalent ? "true" : "false" ) + "\n";
    break;
  case output_format::text:
    report = std::string( v.equivalent ? "EQUIVALENT" : "NOT EQUIVALENT" ) + " (" + v.detail + ")\n";
    break;
  }
  emit( cfg, report );
  return v.equivalent ? 0 : 1;
}

int cmd_optimize( run_config const& cfg )
{
  require_n( cfg.n, 3, "--n" );
  std::vector<metric> metrics;
  if ( cfg.metric_name == "T" || cfg.metric_name == "both" )
    metrics.push_back( metric::terms );
  if ( cfg.metric_name == "P" || cfg.metric_name == "both" )
    metrics.push_back( metric::plus );

  std::string text;
  json doc{ { "schema_version", schema_version }, { "n", cfg.n }, { "metrics", json::array() } };
  std::string csv = "metric,p,q,min,argmin\n";
  for ( auto which : metrics )
  {
    auto const table = min_metric( cfg.n, which );
    json intervals = json::array();
    auto add = [&]( vertex p, vertex q ) {
      auto const value = table.min_value( p, q );
      auto const argmin = table.argmin( p, q );
      text += std::string( to_string( which ) ) + " (" + std::to_string( p ) + "," + std::to_string( q ) +
              ") min=" + std::to_string( value ) + " argmin=" + join( argmin ) + "\n";
      csv += std::string( to_string( which ) ) + "," + std::to_string( p ) + "," + std::to_string( q ) + "," +
             std::to_string( value ) + ",\"" + join( argmin ) + "\"\n";
      intervals.push_back( { { "p", p }, { "q", q }, { "min", value }, { "argmin", argmin } } );
    };
    if ( cfg.all_intervals )
    {
      for ( vertex len = 3; len <= cfg.n; ++len )
        for ( vertex p = 1; p + len - 1 <= cfg.n; ++p )
          add( p, p + len - 1 );
    }
    else
      add( 1, cfg.n );
    doc["metrics"].push_back( { { "metric", to_string( which ) },
                                { "recurrence", which == metric::terms ? recurrence_T( cfg.n ) : recurrence_P( cfg.n ) },
                                { "intervals", intervals } } );
  }
  emit( cfg, cfg.format == output_format::json ? dump( doc ) : cfg.format == output_format::csv ? csv : text );
  return 0;
}

int cmd_special( run_config const& cfg )
{
  require_n( cfg.n_max, 7, "--n-max" );
  auto const report = special_values( cfg.n_max );
  auto groups_text = []( std::vector<interval> const& groups ) {
    std::string text;
    for ( auto [first, last] : groups )
      text += ( text.empty() ? "" : " " ) + std::to_string( first ) + "-" + std::to_string( last );
    return text;
  };

  std::string out;
  switch ( cfg.format )
  {
  case output_format::json:
  {
    json groups = json::array(), predicted = json::array();
    for ( auto [first, last] : report.groups )
      groups.push_back( { first, last } );
    for ( auto [first, last] : report.predicted_groups )
      predicted.push_back( { first, last } );
    out = dump( { { "schema_version", schema_version },
                  { "n_max", cfg.n_max },
                  { "special", report.values },
                  { "groups", groups },
                  { "predicted_groups", predicted },
                  { "groups_match", report.groups_match } } );
    break;
  }
  case output_format::csv:
    out = "n\n";
    for ( auto n : report.values )
      out += std::to_string( n ) + "\n";
    break;
  case output_format::text:
    out = join( report.values ) + "\ngroups: " + groups_text( report.groups ) +
          "\npredicted: " + groups_text( report.predicted_groups ) +
          "\ngroups_match: " + ( report.groups_match ? "true" : "false" ) + "\n";
    break;
  }
  emit( cfg, out );
  return 0;
}

int cmd_table( run_config const& cfg )
{
  require_n( cfg.n_min, 1, "--n-min" );
  if ( cfg.n_max < cfg.n_min )
    throw usage_error( "--n-max must be at least --n-min" );
  auto const how = method_of( cfg );
  table_options options;
  options.prime = prime_of( cfg );
  options.trials = cfg.trials;
  options.seed = cfg.trial_seed;
  auto const rows = complexity_table( cfg.n_min, cfg.n_max, how, options );

  std::string out;
  switch ( cfg.format )
  {
  case output_format::json:
  {
    json list = json::array();
    for ( auto const& r : rows )
      list.push_back( { { "n", r.n },
                        { "method", r.method },
                        { "T_measured", r.T_measured },
                        { "P_measured", r.P_measured },
                        { "T_predicted", r.T_predicted },
                        { "P_predicted", r.P_predicted },
                        { "equivalent", r.equivalent } } );
    out = dump( { { "schema_version", schema_version }, { "rows", list } } );
    break;
  }
  case output_format::csv:
    out = csv_header() + "\n";
    for ( auto const& r : rows )
      out += to_csv( r ) + "\n";
    break;
  case output_format::text:
  {
    std::ostringstream s;
    s << std::setw( 6 ) << "n" << std::setw( 12 ) << "method" << std::setw( 14 ) << "T" << std::setw( 14 ) << "P"
      << std::setw( 14 ) << "T_pred" << std::setw( 14 ) << "P_pred" << "  equivalent\n";
    for ( auto const& r : rows )
      s << std::setw( 6 ) << r.n << std::setw( 12 ) << r.method << std::setw( 14 ) << r.T_measured << std::setw( 14 )
        << r.P_measured << std::setw( 14 ) << r.T_predicted << std::setw( 14 ) << r.P_predicted << "  "
        << ( r.equivalent ? "true" : "false" ) << "\n";
    out = s.str();
    break;
  }
  }
  emit( cfg, out );
  bool all_equivalent = true;
  for ( auto const& r : rows )
    all_equivalent = all_equivalent && r.equivalent;
  return all_equivalent ? 0 : 1;
}

int cmd_fit( run_config const& cfg )
{
  if ( !cfg.m )
    throw usage_error( "fit requires --m" );
  auto const m = *cfg.m;
  if ( m < 2 )
    throw usage_error( "--m must be at least 2" );
  auto n_list = cfg.n_list;
  if ( n_list.empty() )
    n_list = { 64, 128, 256, 512 };
  auto const estimate = exponent_fit( m, n_list );
  // 1 + log_m 2^(m-1)
  auto const predicted = 1.0 + static_cast<double>( m - 1 ) * std::log( 2.0 ) / std::log( static_cast<double>( m ) );

  std::ostringstream s;
  s << std::fixed << std::setprecision( 4 );
  switch ( cfg.format )
  {
  case output_format::json:
    s.str( dump( { { "schema_version", schema_version },
                   { "m", m },
                   { "n_list", n_list },
                   { "exponent", estimate },
                   { "predicted", predicted } } ) );
    break;
  case output_format::csv:
    s << "m,exponent,predicted\n" << m << "," << estimate << "," << predicted << "\n";
    break;
  case output_format::text:
    s << "m=" << m << " exponent=" << estimate << " predicted=" << predicted << "\n";
    break;
  }
  emit( cfg, s.str() );
  return 0;
}

int cmd_repro( run_config const& cfg )
{
  std::ostringstream s;
  auto const results = repro::run_all( [&]( repro::result const& r ) {
    std::ostringstream line;
    line << ( r.passed ? "PASS " : "FAIL " ) << r.id << " " << r.name << ": " << r.detail;
    if ( cfg.timings )
      line << " [" << std::fixed << std::setprecision( 3 ) << r.seconds << " s]";
    line << "\n";
    s << line.str();
    if ( cfg.out_path.empty() )
      std::cout << line.str() << std::flush;
  } );
  if ( !cfg.out_path.empty() )
    emit( cfg, s.str() );
  for ( auto const& r : results )
    if ( !r.passed )
      return 1;
  return 0;
}

} // namespace

int main( int argc, char** argv )
{
  CLI::App app{ "Generate, optimize and verify algebraic expressions of Fibonacci graphs" };
  app.require_subcommand( 1 );
  run_config cfg;

  std::map<std::string, output_format> const formats{
      { "text", output_format::text }, { "json", output_format::json }, { "csv", output_format::csv } };

  auto add_output = [&]( CLI::App* sub ) {
    sub->add_option( "--format", cfg.format, "text, json or csv" )
        ->transform( CLI::CheckedTransformer( formats, CLI::ignore_case ) );
    sub->add_option( "--out", cfg.out_path, "Write output to this file" );
  };
  auto add_method = [&]( CLI::App* sub ) {
    sub->add_option( "--method", cfg.method_name, "canonical, middle, fixed, leftmost, seeded or gd" )
        ->check( CLI::IsMember( { "canonical", "middle", "fixed", "leftmost", "seeded", "gd" } ) );
    sub->add_option( "--m", cfg.m, "Parts per step (gd)" );
    sub->add_option( "--tie", cfg.tie_name, "Middle vertex tie-break: low or high" )
        ->check( CLI::IsMember( { "low", "high" } ) );
    sub->add_option( "--seed", cfg.seed, "Seed (seeded)" );
    sub->add_option( "--split", cfg.splits, "Fixed decomposition vertex P:Q:I (fixed), repeatable" );
  };
  auto add_modular = [&]( CLI::App* sub ) {
    sub->add_option( "--prime", cfg.prime, "Prime modulus (default: FIBEXPR_PRIME or 2147483647)" );
    sub->add_option( "--trials", cfg.trials, "Random modular trials" );
    sub->add_option( "--trial-seed", cfg.trial_seed, "Seed of the random assignments" );
  };

  auto* expr_cmd = app.add_subcommand( "expr", "Print an expression and its complexity" );
  expr_cmd->add_option( "--n", cfg.n, "Vertex count" )->required();
  add_method( expr_cmd );
  add_output( expr_cmd );

  auto* verify_cmd = app.add_subcommand( "verify", "Check an expression against the path polynomial" );
  verify_cmd->add_option( "--n", cfg.n, "Vertex count" )->required();
  verify_cmd->add_option( "--mode", cfg.mode, "expand or modeval" )->check( CLI::IsMember( { "expand", "modeval" } ) );
  verify_cmd->add_option( "--formula", cfg.formula, "Verify this formula instead of a generated one" );
  verify_cmd->add_option( "--formula-file", cfg.formula_file, "Read the formula from a file" );
  add_method( verify_cmd );
  add_modular( verify_cmd );
  add_output( verify_cmd );

  auto* optimize_cmd = app.add_subcommand( "optimize", "Minimum T/P over all binary decompositions" );
  optimize_cmd->add_option( "--n", cfg.n, "Vertex count" )->required();
  optimize_cmd->add_option( "--metric", cfg.metric_name, "T, P or both" )->check( CLI::IsMember( { "T", "P", "both" } ) );
  optimize_cmd->add_flag( "--all-intervals", cfg.all_intervals, "Report every sub-interval" );
  add_output( optimize_cmd );

  auto* special_cmd = app.add_subcommand( "special", "Sizes with several P-optimal first splits" );
  special_cmd->add_option( "--n-max", cfg.n_max, "Largest vertex count" )->required();
  add_output( special_cmd );

  auto* table_cmd = app.add_subcommand( "table", "Measured and predicted complexity per n" );
  table_cmd->add_option( "--n-max", cfg.n_max, "Largest vertex count" )->required();
  table_cmd->add_option( "--n-min", cfg.n_min, "Smallest vertex count" );
  add_method( table_cmd );
  add_modular( table_cmd );
  add_output( table_cmd );

  auto* fit_cmd = app.add_subcommand( "fit", "Growth exponent of uniform generalized decomposition" );
  fit_cmd->add_option( "--m", cfg.m, "Parts per step" )->required();
  fit_cmd->add_option( "--n-list", cfg.n_list, "Vertex counts, comma separated" )->delimiter( ',' );
  add_output( fit_cmd );

  auto* repro_cmd = app.add_subcommand( "repro", "Run every reproduction criterion" );
  repro_cmd->add_flag( "--timings", cfg.timings, "Show elapsed time per criterion" );
  repro_cmd->add_option( "--out", cfg.out_path, "Write the report to this file" );

  try
  {
    app.parse( argc, argv );
  }
  catch ( CLI::CallForHelp const& e )
  {
    return app.exit( e );
  }
  catch ( CLI::CallForAllHelp const& e )
  {
    return app.exit( e );
  }
  catch ( CLI::ParseError const& e )
  {
    app.exit( e );
    return 2;
  }

  try
  {
    if ( *expr_cmd )
      return cmd_expr( cfg );
    if ( *verify_cmd )
      return cmd_verify( cfg );
    if ( *optimize_cmd )
      return cmd_optimize( cfg );
    if ( *special_cmd )
      return cmd_special( cfg );
    if ( *table_cmd )
      return cmd_table( cfg );
    if ( *fit_cmd )
      return cmd_fit( cfg );
    if ( *repro_cmd )
      return cmd_repro( cfg );
  }
  catch ( usage_error const& e )
  {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  }
  catch ( fibexpr::error const& e )
  {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
