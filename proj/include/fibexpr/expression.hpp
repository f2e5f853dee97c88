#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

namespace fibexpr
{

enum class label_kind : std::uint8_t
{
  a, /* edge (v, v+1) */
  b  /* edge (v, v+2) */
};

/// Edge symbol of a Fibonacci graph. Ordered by kind, then index.
struct label
{
  label_kind kind = label_kind::a;
  std::uint32_t index = 1;

  friend auto operator<=>( label const&, label const& ) = default;
};

inline label a( std::uint32_t index ) { return { label_kind::a, index }; }
inline label b( std::uint32_t index ) { return { label_kind::b, index }; }

inline std::string to_string( label l )
{
  return ( l.kind == label_kind::a ? "a" : "b" ) + std::to_string( l.index );
}

/// Whether `l` is an edge of the `n`-vertex Fibonacci graph.
inline bool is_edge_of( label l, std::int64_t n )
{
  if ( l.index < 1 )
    return false;
  return l.kind == label_kind::a ? l.index <= n - 1 : l.index <= n - 2;
}

enum class node_kind : std::uint8_t
{
  unit,
  zero,
  term,
  sum,
  product
};

/*! \brief Immutable algebraic expression over edge labels.

  Nodes are reference counted and never modified after construction, so
  subexpressions may be shared freely between expressions and threads.
  Copies are cheap. Equality is structural.
*/
class expr
{
  struct node
  {
    node_kind kind;
    label term;
    std::vector<expr> children;
  };

public:
  expr() : expr( unit() ) {}

  static expr unit()
  {
    static auto const instance = std::make_shared<node const>( node{ node_kind::unit, {}, {} } );
    return expr( instance );
  }

  static expr zero()
  {
    static auto const instance = std::make_shared<node const>( node{ node_kind::zero, {}, {} } );
    return expr( instance );
  }

  static expr term( label l ) { return expr( std::make_shared<node const>( node{ node_kind::term, l, {} } ) ); }

  /// Raw n-ary sum; no simplification is applied.
  static expr sum( std::vector<expr> children ) { return nary( node_kind::sum, std::move( children ) ); }

  /// Raw n-ary product; no simplification is applied.
  static expr product( std::vector<expr> children ) { return nary( node_kind::product, std::move( children ) ); }

  node_kind kind() const noexcept { return node_->kind; }
  bool is( node_kind k ) const noexcept { return node_->kind == k; }

  /// Label of a term node.
  label term_label() const
  {
    if ( node_->kind != node_kind::term )
      throw std::logic_error( "term_label() on a non-term expression" );
    return node_->term;
  }

  std::span<expr const> children() const noexcept { return node_->children; }

  /// Identity of the underlying node; equal ids imply equal expressions.
  void const* id() const noexcept { return node_.get(); }

  friend bool operator==( expr const& lhs, expr const& rhs )
  {
    if ( lhs.node_ == rhs.node_ )
      return true;
    if ( lhs.kind() != rhs.kind() )
      return false;
    switch ( lhs.kind() )
    {
    case node_kind::unit:
    case node_kind::zero:
      return true;
    case node_kind::term:
      return lhs.node_->term == rhs.node_->term;
    default:
      return lhs.node_->children == rhs.node_->children;
    }
  }

private:
  explicit expr( std::shared_ptr<node const> n ) : node_( std::move( n ) ) {}

  static expr nary( node_kind kind, std::vector<expr> children )
  {
    if ( children.size() < 2 )
      throw std::invalid_argument( "sum and product nodes need at least two children" );
    return expr( std::make_shared<node const>( node{ kind, {}, std::move( children ) } ) );
  }

  std::shared_ptr<node const> node_;
};

namespace detail
{

/// Post-order fold over the expression DAG, visiting each shared node once.
template<typename Value, typename Fn>
Value fold_shared( expr const& e, Fn&& combine, std::unordered_map<void const*, Value>& memo )
{
  if ( e.children().empty() )
    return combine( e, std::span<Value const>{} );
  if ( auto it = memo.find( e.id() ); it != memo.end() )
    return it->second;
  std::vector<Value> values;
  values.reserve( e.children().size() );
  for ( auto const& child : e.children() )
    values.push_back( fold_shared<Value>( child, combine, memo ) );
  auto value = combine( e, std::span<Value const>( values ) );
  memo.emplace( e.id(), value );
  return value;
}

template<typename Value, typename Fn>
Value fold_shared( expr const& e, Fn&& combine )
{
  std::unordered_map<void const*, Value> memo;
  return fold_shared<Value>( e, combine, memo );
}

} // namespace detail

/// Number of term occurrences (the first complexity characteristic).
inline std::uint64_t metric_terms( expr const& e )
{
  return detail::fold_shared<std::uint64_t>( e, []( expr const& node, std::span<std::uint64_t const> sub ) {
    std::uint64_t total = node.is( node_kind::term ) ? 1u : 0u;
    for ( auto v : sub )
      total += v;
    return total;
  } );
}

/// Number of plus operators (the second complexity characteristic).
inline std::uint64_t metric_plus( expr const& e )
{
  return detail::fold_shared<std::uint64_t>( e, []( expr const& node, std::span<std::uint64_t const> sub ) {
    std::uint64_t total = node.is( node_kind::sum ) ? sub.size() - 1 : 0u;
    for ( auto v : sub )
      total += v;
    return total;
  } );
}

/// Simplifying sum of already simplified operands.
inline expr make_sum( std::vector<expr> const& operands )
{
  std::vector<expr> children;
  children.reserve( operands.size() );
  for ( auto const& op : operands )
  {
    if ( op.is( node_kind::zero ) )
      continue;
    if ( op.is( node_kind::sum ) )
      children.insert( children.end(), op.children().begin(), op.children().end() );
    else
      children.push_back( op );
  }
  if ( children.empty() )
    return expr::zero();
  if ( children.size() == 1 )
    return children.front();
  return expr::sum( std::move( children ) );
}

/// Simplifying product of already simplified operands.
inline expr make_product( std::vector<expr> const& operands )
{
  std::vector<expr> children;
  children.reserve( operands.size() );
  for ( auto const& op : operands )
  {
    if ( op.is( node_kind::zero ) )
      return expr::zero();
    if ( op.is( node_kind::unit ) )
      continue;
    if ( op.is( node_kind::product ) )
      children.insert( children.end(), op.children().begin(), op.children().end() );
    else
      children.push_back( op );
  }
  if ( children.empty() )
    return expr::unit();
  if ( children.size() == 1 )
    return children.front();
  return expr::product( std::move( children ) );
}

/*! \brief Normal form: flattened sums and products, Unit absorbed in
  products, Zero annihilating products and vanishing from sums.

  Child order is preserved. A Unit summand (as in `1+a1`) is kept, since
  it is not an identity for addition.
*/
inline expr simplify( expr const& e )
{
  return detail::fold_shared<expr>( e, []( expr const& node, std::span<expr const> sub ) {
    std::vector<expr> operands( sub.begin(), sub.end() );
    switch ( node.kind() )
    {
    case node_kind::sum:
      return make_sum( operands );
    case node_kind::product:
      return make_product( operands );
    default:
      return node;
    }
  } );
}

/// Series composition: the product of two expressions, simplified.
inline expr sp_series( expr const& lhs, expr const& rhs ) { return make_product( { simplify( lhs ), simplify( rhs ) } ); }

/// Parallel composition: the sum of two expressions, simplified.
inline expr sp_parallel( expr const& lhs, expr const& rhs ) { return make_sum( { simplify( lhs ), simplify( rhs ) } ); }

/// Labels in order of first appearance, each listed once.
inline std::vector<label> labels_of( expr const& e )
{
  std::vector<label> result;
  std::unordered_set<void const*> seen_nodes;
  std::set<label> seen_labels;
  auto visit = [&]( auto const& self, expr const& node ) -> void {
    if ( node.is( node_kind::term ) )
    {
      if ( auto l = node.term_label(); seen_labels.insert( l ).second )
        result.push_back( l );
      return;
    }
    if ( !node.children().empty() && !seen_nodes.insert( node.id() ).second )
      return;
    for ( auto const& child : node.children() )
      self( self, child );
  };
  visit( visit, e );
  return result;
}

/// True iff no label occurs more than once.
inline bool is_read_once( expr const& e )
{
  return labels_of( e ).size() == metric_terms( e );
}

} // namespace fibexpr
