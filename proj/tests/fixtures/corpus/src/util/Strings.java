package util;

public final class Strings {
    private Strings() {
    }

    public static String repeat(String s, int times) {
        StringBuilder sb = new StringBuilder();
        for (int i = 0; i < times; i++) {
            sb.append(s);
        }
        return sb.toString();
    }

    public static String join(String sep, String... parts) {
        return String.join(sep, parts);
    }

    public static boolean isBlank(String s) {
        return s == null || s.trim().isEmpty();
    }
}
