package app;

import java.io.IOException;
import java.io.UncheckedIOException;

public class Worker implements Runnable {
    private final Config config;
    private volatile boolean stopped;

    public Worker(Config config) {
        this.config = config;
    }

    @Override
    public void run() {
        int attempt = 0;
        while (!stopped && attempt < config.retries()) {
            try {
                step(attempt);
            } catch (IOException | IllegalStateException e) {
                stopped = true;
            } finally {
                attempt++;
            }
        }
    }

    private void step(int attempt) throws IOException {
        synchronized (this) {
            if (attempt > 1) {
                throw new IOException("attempt " + attempt);
            }
        }
    }

    public void stop() {
        stopped = true;
    }
}
