package app;

public record Report(String title, int score) {
    public Report {
        if (score < 0) {
            throw new IllegalArgumentException("negative");
        }
    }

    public String summary() {
        return title + ": " + score;
    }
}
