/* Prints the toric criterion and degree-2 comparison for a graph file. */
#include <stdio.h>
#include <stdlib.h>

#include "bnalg.h"

static char *slurp(const char *path) {
  FILE *f = fopen(path, "rb");
  if (!f) return NULL;
  fseek(f, 0, SEEK_END);
  long n = ftell(f);
  rewind(f);
  char *buf = malloc((size_t)n + 1);
  if (buf && fread(buf, 1, (size_t)n, f) != (size_t)n) {
    free(buf);
    buf = NULL;
  }
  if (buf) buf[n] = '\0';
  fclose(f);
  return buf;
}

int main(int argc, char **argv) {
  if (argc != 2) {
    fprintf(stderr, "usage: %s graph.json\n", argv[0]);
    return 1;
  }
  char *json = slurp(argv[1]);
  if (!json) {
    perror(argv[1]);
    return 1;
  }
  BnNetwork *net = NULL;
  BnStatus st = bn_network_from_json(json, &net);
  free(json);
  if (st != BN_OK) {
    fprintf(stderr, "error %d: %s\n", (int)st, bn_last_error());
    return 1;
  }
  bool toric = false;
  size_t kernel = 0, ci = 0;
  bool equal = false;
  bn_toric_criterion(net, &toric);
  st = bn_gss_check(net, 2, BN_STANDARD, &kernel, &ci, &equal);
  if (st != BN_OK) {
    fprintf(stderr, "error %d: %s\n", (int)st, bn_last_error());
    bn_network_free(net);
    return (int)st;
  }
  printf("toric criterion: %s\n", toric ? "true" : "false");
  printf("degree 2: kernel %zu ci %zu equal %s\n", kernel, ci, equal ? "true" : "false");
  bn_network_free(net);
  return 0;
}
