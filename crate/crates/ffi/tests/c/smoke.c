#include <stdio.h>
#include <string.h>
#include "pglbox.h"

int main(void) {
    PglSBox *s = NULL;
    if (pgl_sbox_build(32, 22, 11, 8, 1, &s) != PGL_STATUS_OK) return 1;
    uint8_t t[256];
    pgl_sbox_table(s, false, t);
    pgl_sbox_free(s);
    if (t[0] != 203) return 2;

    PglLorenzParams p = pgl_lorenz_default(0.1, 0.2, 0.3);
    PglKey *k = NULL;
    if (pgl_key_new(&p, NULL, NULL, 0, &k) != PGL_STATUS_OK) return 3;
    uint8_t img[4 * 3 * 3], ct[sizeof img], back[sizeof img];
    for (size_t i = 0; i < sizeof img; i++) img[i] = (uint8_t)(i * 11);
    pgl_encrypt(k, 4, 3, 3, img, ct);
    pgl_decrypt(k, 4, 3, 3, ct, back);
    pgl_key_free(k);
    if (memcmp(img, back, sizeof img) != 0) return 4;

    if (pgl_sbox_build(1, 1, 1, 1, 1, &s) != PGL_STATUS_DEGENERATE) return 5;
    printf("%s %s\n", pgl_version(), pgl_last_error_message());
    return 0;
}
