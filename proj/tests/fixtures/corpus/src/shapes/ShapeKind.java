package shapes;

public enum ShapeKind {
    CIRCLE(0),
    SQUARE(4);

    private final int corners;

    ShapeKind(int corners) {
        this.corners = corners;
    }

    public int corners() {
        return corners;
    }
}
