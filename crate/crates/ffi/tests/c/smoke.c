#include <stdio.h>
#include <string.h>

#include "symbreak.h"

#define CHECK(expr)                                                   \
  do {                                                                \
    if (!(expr)) {                                                    \
      fprintf(stderr, "%s:%d: %s (%s)\n", __FILE__, __LINE__, #expr, \
              sb_last_error());                                       \
      return 1;                                                       \
    }                                                                 \
  } while (0)

int main(void) {
  SbGraph *g = NULL;
  CHECK(sb_graph_from_family("book:4,3", &g) == SB_OK);
  CHECK(sb_graph_vertex_count(g) == 8);

  size_t det = 0, dist = 0, cost = 0;
  CHECK(sb_determining_number(g, 0, &det) == SB_OK && det == 2);
  CHECK(sb_distinguishing_number(g, 0, &dist) == SB_OK && dist == 2);
  CHECK(sb_paint_cost(g, 2, 0, &cost) == SB_OK && cost == 3);

  char *order = NULL;
  CHECK(sb_automorphism_group_order(g, &order) == SB_OK);
  CHECK(strcmp(order, "12") == 0);
  sb_string_free(order);

  CHECK(sb_paint_cost(g, 1, 0, &cost) == SB_NOT_DISTINGUISHABLE);
  CHECK(strlen(sb_last_error()) > 0);
  sb_graph_free(g);

  uint64_t lo = 0, hi = 0;
  CHECK(sb_book_paint_cost(4, 6, 3, &lo, &hi) == SB_OK && lo == 6 && hi == 7);
  puts("ok");
  return 0;
}
