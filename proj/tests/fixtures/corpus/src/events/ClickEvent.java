package events;

public class ClickEvent extends Event {
    private final int x;
    private final int y;

    public ClickEvent(long timestamp, int x, int y) {
        super(timestamp);
        this.x = x;
        this.y = y;
    }

    @Override
    public String name() {
        return "click";
    }

    public int distanceTo(ClickEvent other) {
        return Math.abs(x - other.x) + Math.abs(y - other.y);
    }
}
