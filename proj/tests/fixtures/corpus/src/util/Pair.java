package util;

public class Pair<A, B> {
    private final A first;
    private final B second;

    public Pair(A first, B second) {
        this.first = first;
        this.second = second;
    }

    public A first() {
        return first;
    }

    public B second() {
        return second;
    }

    public <C> Pair<A, C> withSecond(C value) {
        return new Pair<>(first, value);
    }
}
