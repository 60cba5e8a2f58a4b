package app;

import events.*;

public interface Registry {
    void register(Listener<? extends Event> listener);

    static Registry noop() {
        return listener -> {
        };
    }

    static <T extends Comparable<T>> T max(T a, T b) {
        return a.compareTo(b) >= 0 ? a : b;
    }
}
