package app;

import java.util.ArrayList;
import java.util.List;

public class Outer {
    static final List<String> NAMES = new ArrayList<>();
    private int level;

    static {
        NAMES.add("outer");
    }

    {
        level = 1;
    }

    class Inner {
        private int level;

        int combined() {
            return level + Outer.this.level;
        }
    }

    static class Nested {
        int size() {
            return NAMES.size();
        }
    }

    int local() {
        class Helper {
            int twice(int v) {
                return v * 2;
            }
        }
        return new Helper().twice(level);
    }
}
