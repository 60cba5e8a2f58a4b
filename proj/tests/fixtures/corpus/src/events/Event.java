package events;

public abstract class Event {
    public static final String PREFIX = "event:";
    protected final long timestamp;

    protected Event(long timestamp) {
        this.timestamp = timestamp;
    }

    public abstract String name();

    @Override
    public String toString() {
        return PREFIX + name() + "@" + timestamp;
    }
}
