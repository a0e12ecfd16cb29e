#include <stdio.h>
#include "twolayer.h"

int main(void) {
    TlClassList *list = NULL;
    if (tl_generate_classes(13, TL_VARIANT_REFLECTION, 1, &list) != TL_STATUS_OK) {
        fprintf(stderr, "%s\n", tl_last_error_message());
        return 1;
    }
    printf("%zu classes, first %s\n", tl_class_list_len(list), tl_class_list_sentence(list, 0));
    tl_class_list_free(list);

    TlNetwork *net = NULL;
    if (tl_network_from_sentence("12;122;122", 10, &net) != TL_STATUS_OK) {
        fprintf(stderr, "%s\n", tl_last_error_message());
        return 1;
    }
    bool saturated = false;
    tl_network_is_saturated(net, &saturated);
    char *text = NULL;
    tl_network_format(net, &text);
    printf("%ssaturated: %d\n", text, saturated);
    tl_string_free(text);
    tl_network_free(net);
    return 0;
}
